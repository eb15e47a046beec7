#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "corpus.hpp"
#include "qwst/constructions.hpp"
#include "qwst/transfer.hpp"

using namespace qwst;

TEST_CASE("abstract PST check reproduces Figure 1") {
    FamilyInstance fi = cocktail_party(3);
    TransitionMatrix u(fi.graph, fi.weights);
    auto spaces = unitary_eigenspaces(u.dense());
    TransferVerdict v =
        abstract_pst_check(spaces, vertex_state(u, 0), vertex_state(u, 3), 6);
    CHECK(v.kind == TransferVerdict::Kind::Pst);
    CHECK(std::abs(std::abs(v.gamma) - 1.0) < 1e-9);
    // and fails at t = 5
    v = abstract_pst_check(spaces, vertex_state(u, 0), vertex_state(u, 3), 5);
    CHECK(v.kind == TransferVerdict::Kind::NoPst);
}

TEST_CASE("C4 has PST at t = 2 between antipodal vertices") {
    FamilyInstance fi = cocktail_party(2);
    TransitionMatrix u(fi.graph, fi.weights);
    // oracle: direct power of the 8x8 unitary
    CHECK(fidelity(u, 0, 2, 2) == Catch::Approx(1.0).margin(1e-9));
    auto spaces = unitary_eigenspaces(u.dense());
    TransferVerdict v = abstract_pst_check(spaces, vertex_state(u, 0), vertex_state(u, 2), 2);
    CHECK(v.kind == TransferVerdict::Kind::Pst);
}

TEST_CASE("abstract check rejects non-cospectral pairs") {
    FamilyInstance fi = cocktail_party(3);
    TransitionMatrix u(fi.graph, fi.weights);
    auto spaces = unitary_eigenspaces(u.dense());
    // adjacent vertices 0, 1 are not strongly cospectral
    TransferVerdict v = abstract_pst_check(spaces, vertex_state(u, 0), vertex_state(u, 1), 6);
    CHECK(v.kind == TransferVerdict::Kind::NoPst);
    CHECK(v.reason.find("not strongly cospectral") != std::string::npos);
}

TEST_CASE("abstract PST check agrees with fidelity = 1 on random walks") {
    std::mt19937 rng(71);
    for (int trial = 0; trial < 6; ++trial) {
        Graph g = testing::random_connected_graph(rng);
        WeightMatrix w = testing::random_normalized_weights(g, rng);
        TransitionMatrix u(g, w);
        auto spaces = unitary_eigenspaces(u.dense());
        std::uniform_int_distribution<int> vd(0, g.vertex_count() - 1);
        const int a = vd(rng), b = vd(rng);
        WalkState x = vertex_state(u, a), y = vertex_state(u, b);
        WalkState cur = x;
        for (long long t = 0; t <= 50; ++t) {
            const double f = std::abs(inner(cur, y));
            const bool pst = abstract_pst_check(spaces, x, y, t).kind == TransferVerdict::Kind::Pst;
            CHECK(pst == (f >= 1.0 - 1e-9));
            cur = u.apply(cur);
        }
    }
}

TEST_CASE("pst_check on Figure 1: t = 6 passes, t = 3 fails condition (ii)") {
    FamilyInstance fi = cocktail_party(3);
    SpectralData sd = decompose(fi.h);
    CospectralityCertificate cert = strong_cospectrality(sd, 0, 3);
    REQUIRE(m_strong_cospectrality(cert));

    TransferVerdict ok = pst_check(fi.graph, fi.h, cert, 6, &fi.weights);
    CHECK(ok.kind == TransferVerdict::Kind::Pst);
    CHECK(ok.t == 6);

    TransferVerdict bad = pst_check(fi.graph, fi.h, cert, 3, &fi.weights);
    CHECK(bad.kind == TransferVerdict::Kind::NoPst);
    CHECK(bad.reason.find("multiple of pi") != std::string::npos);
}

TEST_CASE("hypercube Q3 never has PST (irrational angles)") {
    FamilyInstance fi = hypercube(3);
    SpectralData sd = decompose(fi.h);
    CospectralityCertificate cert = strong_cospectrality(sd, 0, 7);
    REQUIRE(m_strong_cospectrality(cert));
    for (long long t : {1, 2, 3, 5, 10, 100, 1000}) {
        TransferVerdict v = pst_check(fi.graph, fi.h, cert, t, &fi.weights);
        CHECK(v.kind == TransferVerdict::Kind::NoPst);
    }
    CHECK_FALSE(pst_search(fi.graph, fi.h, 0, 7, 1000, &fi.weights).has_value());
}

TEST_CASE("partition shape check") {
    FamilyInstance fi = cocktail_party(3);
    SpectralData sd = decompose(fi.h);
    CospectralityCertificate cert = strong_cospectrality(sd, 0, 3);
    REQUIRE(m_strong_cospectrality(cert));
    CHECK(partition_shape_check(cert).ok);

    // synthetic certificate with three classes mod 6
    CospectralityCertificate syn;
    syn.cospectral = true;
    syn.root_of_unity = true;
    syn.m = 6;
    syn.support = {0, 1, 2};
    syn.support_values = {0.9, 0.3, -0.4};
    syn.residues = {0, 1, 2};
    syn.partition[0] = {0};
    syn.partition[1] = {1};
    syn.partition[2] = {2};
    PartitionShape s = partition_shape_check(syn);
    CHECK_FALSE(s.ok);
    CHECK(s.reason.find("classes") != std::string::npos);

    // odd m
    CospectralityCertificate odd = syn;
    odd.m = 3;
    odd.partition.clear();
    odd.partition[0] = {0, 1};
    odd.partition[1] = {2};
    odd.residues = {0, 0, 1};
    s = partition_shape_check(odd);
    CHECK_FALSE(s.ok);
    CHECK(s.reason.find("odd") != std::string::npos);
}

TEST_CASE("pgst_decide on the built-in families") {
    SECTION("cocktail n = 4: lattice route") {
        FamilyInstance fi = cocktail_party(4);
        TransferVerdict v = pgst_decide(fi.graph, fi.h, 0, 4, 0);
        CHECK(v.kind == TransferVerdict::Kind::Pgst);
        CHECK_FALSE(v.relation_basis.empty());
    }
    SECTION("hypercube Q5") {
        FamilyInstance fi = hypercube(5);
        TransferVerdict v = pgst_decide(fi.graph, fi.h, 0, 31, 0);
        CHECK(v.kind == TransferVerdict::Kind::Pgst);
    }
    SECTION("hypercube Q4 is undecided with sweep evidence") {
        FamilyInstance fi = hypercube(4);
        TransferVerdict v = pgst_decide(fi.graph, fi.h, 0, 15, 500);
        CHECK(v.kind == TransferVerdict::Kind::Undecided);
        CHECK(v.evidence_t >= 0);
        CHECK(v.evidence_fidelity <= 0.76);  // the walk is periodic with max 3/4
    }
    SECTION("seidel n = 3") {
        FamilyInstance fi = seidel_complete(3);
        TransferVerdict v = pgst_decide(fi.graph, fi.h, 0, 1, 0);
        CHECK(v.kind == TransferVerdict::Kind::Pgst);
    }
    SECTION("seidel n = 2 is not strongly cospectral (merged eigenvalue)") {
        FamilyInstance fi = seidel_complete(2);
        TransferVerdict v = pgst_decide(fi.graph, fi.h, 0, 1, 0);
        CHECK(v.kind == TransferVerdict::Kind::NoPgst);
        CHECK(v.reason.find("not strongly cospectral") != std::string::npos);
    }
    SECTION("k4 family m in {2, 4, 6}") {
        for (int m : {2, 4, 6}) {
            FamilyInstance fi = k4_family(m, 5);
            TransferVerdict v = pgst_decide(fi.graph, fi.h, 0, 1, 0);
            CHECK(v.kind == TransferVerdict::Kind::Pgst);
        }
    }
    SECTION("adjacent cocktail vertices have no PGST") {
        FamilyInstance fi = cocktail_party(3);
        TransferVerdict v = pgst_decide(fi.graph, fi.h, 0, 1, 0);
        CHECK(v.kind == TransferVerdict::Kind::NoPgst);
        CHECK(v.reason.find("not strongly cospectral") != std::string::npos);
    }
}

TEST_CASE("non-root-of-unity phases give undecided with sweep evidence") {
    Graph g(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CMatrix hm(4, 4);
    const cplx I(0.0, 1.0);
    hm(0, 1) = I;
    hm(0, 2) = -I;
    hm(0, 3) = I;
    hm(1, 2) = I;
    hm(1, 3) = I;
    hm(2, 3) = 1.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < i; ++j) hm(i, j) = std::conj(hm(j, i));
    hm = hm * cplx(1.0 / 3.0);
    HermitianAdjacency h(g, hm);
    TransferVerdict v = pgst_decide(g, h, 2, 3, 300);
    CHECK(v.kind == TransferVerdict::Kind::Undecided);
    CHECK(v.reason.find("not roots of unity") != std::string::npos);
    CHECK(v.evidence_t >= 0);
    CHECK(v.evidence_fidelity > 0.0);
    CHECK(v.evidence_fidelity <= 1.0);
}

TEST_CASE("minimal supports go through the lattice route") {
    // K2: support {1, -1} only (no paired variables at all)
    Graph k2(2, {{0, 1}});
    CMatrix wm(2, 2);
    wm(0, 1) = 1.0;
    wm(1, 0) = 1.0;
    WeightMatrix w(k2, wm);
    HermitianAdjacency h = hermitian_from_weights(k2, w);
    TransferVerdict v = pgst_decide(k2, h, 0, 1, 0);
    CHECK(v.kind == TransferVerdict::Kind::Pgst);
    TransitionMatrix u(k2, w);
    CHECK(fidelity(u, 0, 1, 1) == Catch::Approx(1.0).margin(1e-12));

    // path end vertices: support {1, 0, -1}, a single rational-pi class
    Graph p3(3, {{0, 1}, {1, 2}});
    WeightMatrix w3 = degree_normalized_weights(p3);
    HermitianAdjacency h3 = hermitian_from_weights(p3, w3);
    TransferVerdict v3 = pgst_decide(p3, h3, 0, 2, 0);
    CHECK(v3.kind == TransferVerdict::Kind::Pgst);
    CHECK_FALSE(v3.relation_basis.empty());
    TransitionMatrix u3(p3, w3);
    CHECK(fidelity(u3, 0, 2, 2) == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("pgst verdict is symmetric") {
    for (auto fi : {cocktail_party(4), hypercube(3), seidel_complete(3), k4_family(4, 5)}) {
        TransferVerdict ab = pgst_decide(fi.graph, fi.h, fi.pair_a, fi.pair_b, 0);
        TransferVerdict ba = pgst_decide(fi.graph, fi.h, fi.pair_b, fi.pair_a, 0);
        CHECK(ab.kind == ba.kind);
    }
}

TEST_CASE("no strong cospectrality bounds the sweep away from 1") {
    FamilyInstance fi = cocktail_party(3);
    TransitionMatrix u(fi.graph, fi.weights);
    auto spaces = unitary_eigenspaces(u.dense());
    // pair (0,1) is not strongly cospectral; the section-4 bound applies
    WalkState x = vertex_state(u, 0), y = vertex_state(u, 1);
    double bound = 0.0;
    for (const auto& s : spaces) bound += std::abs(inner(s.projection * x, s.projection * y));
    REQUIRE(bound < 1.0 - 1e-6);
    SweepResult sw = fidelity_sweep(u, 0, 1, 500);
    CHECK(sw.best <= bound + 1e-9);
}

TEST_CASE("relation witness validates a synthetic violation") {
    // m = 2 certificate with support {1, -1, 1/3, -1/3} and residues
    // {0, 0, 0, 1}: l_{-x} = 1, l_x = 1 with l_-1 = 1 satisfies (1) and (2)
    // but breaks (3)
    CospectralityCertificate syn;
    syn.cospectral = true;
    syn.root_of_unity = true;
    syn.m = 2;
    syn.support = {0, 1, 2, 3};
    syn.support_values = {1.0, 1.0 / 3.0, -1.0 / 3.0, -1.0};
    syn.residues = {0, 0, 1, 0};
    syn.partition[0] = {0, 1, 3};
    syn.partition[1] = {2};

    std::map<double, std::pair<long long, long long>> l;
    l[1.0 / 3.0] = {1, 0};
    l[-1.0 / 3.0] = {1, 0};
    RelationWitness w = pgst_relation_witness(syn, l, -3, 1);
    CHECK(w.cond1);  // theta + (pi - theta) + pi = 2 pi
    CHECK(w.cond2);  // 1 + 1 - 3 + 1 = 0
    CHECK_FALSE(w.cond3);
    CHECK(w.violation());
    CHECK(w.lhs3_mod_m == 1);

    // all-zero vector is always consistent
    RelationWitness z = pgst_relation_witness(syn, {}, 0, 0);
    CHECK(z.cond1);
    CHECK(z.cond2);
    CHECK(z.cond3);
    CHECK_FALSE(z.violation());
}

TEST_CASE("relation witness on the Figure 1 certificate") {
    FamilyInstance fi = cocktail_party(3);
    SpectralData sd = decompose(fi.h);
    CospectralityCertificate cert = strong_cospectrality(sd, 0, 3);
    REQUIRE(m_strong_cospectrality(cert));
    // l_0 = 2, l'_0 = 0, l_1 = -2: angle sum 2 arccos(0) = pi, not 0 mod 2pi,
    // so condition (1) fails and the vector is consistent (no violation)
    std::map<double, std::pair<long long, long long>> l;
    l[0.0] = {2, 0};
    RelationWitness w = pgst_relation_witness(cert, l, -2, 0);
    CHECK_FALSE(w.cond1);
    CHECK(w.cond2);
    CHECK_FALSE(w.violation());
    // l_0 = 4, l'_0 = 0, l_1 = -4: angle sum 2 pi, and (3) = 4 mod 2 = 0
    l[0.0] = {4, 0};
    w = pgst_relation_witness(cert, l, -4, 0);
    CHECK(w.cond1);
    CHECK(w.cond2);
    CHECK(w.cond3);
}

TEST_CASE("the partition-theorem witness violates condition (3) on 3+ classes") {
    // three-class synthetic certificate: l_mu = l'_mu = 1, l_eta = l'_eta = -1
    // gives left side 2(k - n) mod m != 0
    CospectralityCertificate syn;
    syn.cospectral = true;
    syn.root_of_unity = true;
    syn.m = 6;
    syn.support = {0, 1, 2};
    syn.support_values = {0.9, 0.3, -0.4};  // angles irrelevant: differences cancel
    syn.residues = {1, 3, 0};
    syn.partition[1] = {0};
    syn.partition[3] = {1};
    syn.partition[0] = {2};
    std::map<double, std::pair<long long, long long>> l;
    l[0.9] = {1, 1};
    l[0.3] = {-1, -1};
    RelationWitness w = pgst_relation_witness(syn, l, 0, 0);
    CHECK(w.cond1);  // (l - l') = 0 everywhere
    CHECK(w.cond2);  // 2 - 2 = 0
    CHECK(w.lhs3_mod_m == ((2 * (1 - 3)) % 6 + 6) % 6);
    CHECK(w.violation());
}

TEST_CASE("a 2pi/3 angle with residue 1 yields no_pgst with an explicit witness") {
    // Spectral synthesis in the 4x4 Hadamard eigenbasis: eigenvalues
    // (1, 1/3, -1/2, -5/6) with vertex-pair phases (+1, +1, -1, -1) give a
    // weighted K4 with unit |h| row sums and classes Lambda^0 = {1, 1/3},
    // Lambda^1 = {-1/2, -5/6}. The relation 3 arccos(-1/2) = 2 pi with
    // l_1 = -3 satisfies (1),(2) but puts an odd total on the sigma = 1
    // class, so condition (3) fails and PGST is refuted with that vector.
    const double vecs[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
    const double vals[4] = {1.0, 1.0 / 3.0, -1.0 / 2.0, -5.0 / 6.0};
    CMatrix hm(4, 4);
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) hm(i, j) += vals[k] * vecs[k][i] * vecs[k][j] / 4.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (std::abs(hm(i, j)) < 1e-12) hm(i, j) = 0.0;
    // edge weights come out {01: 2/3, 02: 1/4, 03: 1/12, 12: 1/12, 13: 1/4,
    // 23: 2/3}: a complete graph with |h| row sums exactly 1
    Graph g(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    HermitianAdjacency h(g, hm);
    for (int a = 0; a < 4; ++a) REQUIRE(h.abs_row_sum(a) == Catch::Approx(1.0).margin(1e-12));

    TransferVerdict v = pgst_decide(g, h, 0, 1, 0);
    REQUIRE(v.kind == TransferVerdict::Kind::NoPgst);
    REQUIRE_FALSE(v.violating_l.empty());
    CHECK(v.reason.find("violating integer relation") != std::string::npos);

    // feed the violating vector back through the witness evaluator
    SpectralData sd = decompose(h);
    CospectralityCertificate cert = strong_cospectrality(sd, 0, 1);
    REQUIRE(m_strong_cospectrality(cert));
    std::map<double, std::pair<long long, long long>> l;
    long long l1 = 0, lm1 = 0;
    size_t vi = 0;
    std::vector<double> non_unit;
    for (double lam : v.support)
        if (std::fabs(std::fabs(lam) - 1.0) > 1e-9) non_unit.push_back(lam);
    for (double lam : non_unit) {
        l[lam] = {v.violating_l[vi], v.violating_l[vi + 1]};
        vi += 2;
    }
    for (; vi < v.violating_l.size(); ++vi) {
        if (v.variables[vi] == "l[+1]") l1 = v.violating_l[vi];
        else lm1 = v.violating_l[vi];
    }
    RelationWitness w = pgst_relation_witness(cert, l, l1, lm1);
    CHECK(w.violation());
}

TEST_CASE("pgst lattice generators satisfy conditions (1) and (2)") {
    // the basis reported with a pgst verdict consists of genuine relations
    FamilyInstance fi = cocktail_party(4);
    TransferVerdict v = pgst_decide(fi.graph, fi.h, 0, 4, 0);
    REQUIRE(v.kind == TransferVerdict::Kind::Pgst);
    SpectralData sd = decompose(fi.h);
    CospectralityCertificate cert = strong_cospectrality(sd, 0, 4);
    REQUIRE(m_strong_cospectrality(cert));
    // variables: l[x], l'[x] per non +-1 support value, then l[+1] (and l[-1])
    for (const auto& gen : v.relation_basis) {
        std::map<double, std::pair<long long, long long>> l;
        size_t vi = 0;
        long long l1 = 0, lm1 = 0;
        std::vector<double> non_unit;
        for (double lam : v.support)
            if (std::fabs(std::fabs(lam) - 1.0) > 1e-9) non_unit.push_back(lam);
        for (double lam : non_unit) {
            l[lam] = {gen[vi], gen[vi + 1]};
            vi += 2;
        }
        for (; vi < gen.size(); ++vi) {
            // remaining slots are l[+1], l[-1] in order of the variable names
            if (v.variables[vi] == "l[+1]") l1 = gen[vi];
            else lm1 = gen[vi];
        }
        RelationWitness w = pgst_relation_witness(cert, l, l1, lm1);
        CHECK(w.cond1);
        CHECK(w.cond2);
        CHECK(w.cond3);
    }
}
