#pragma once

#include "qwst/angles.hpp"
#include "qwst/complexmat.hpp"
#include "qwst/constructions.hpp"
#include "qwst/graph.hpp"
#include "qwst/intlattice.hpp"
#include "qwst/io.hpp"
#include "qwst/numtheory.hpp"
#include "qwst/rational.hpp"
#include "qwst/spectral.hpp"
#include "qwst/transfer.hpp"
#include "qwst/unitary_spectra.hpp"
#include "qwst/walk.hpp"
#include "qwst/weights.hpp"
