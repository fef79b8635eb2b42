#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "glueback/complex.hpp"
#include "glueback/corpus.hpp"

using namespace glueback;

namespace {

BitVector bv(const char* s) { return BitVector::parse(s); }

Coloring torus_mu() {
    auto sq = make_polytope(polygon(4));
    return validate_characteristic(sq, {bv("10"), bv("01"), bv("10"), bv("01")});
}

Coloring rp2_mu() {
    auto tri = make_polytope(polygon(3));
    return validate_characteristic(tri, {bv("10"), bv("01"), bv("11")});
}

std::vector<std::size_t> counts(const QuotientCellComplex& cx) {
    std::vector<std::size_t> out;
    for (const auto& cs : cx.cells) out.push_back(cs.size());
    return out;
}

// Independent recount: sum of coset counts grouped by face size.
std::vector<std::size_t> count_oracle(const Coloring& c) {
    const SimplePolytope& p = *c.polytope;
    std::vector<std::size_t> out(static_cast<std::size_t>(p.n) + 1, 0);
    for (const auto& grade : faces(p))
        for (const Face& f : grade) {
            int rank = c.face_subgroup(f.sigma).rank();
            out[static_cast<std::size_t>(f.dim)] += std::size_t{1} << (c.r - rank);
        }
    return out;
}

}  // namespace

TEST_CASE("small cover complexes match the frozen cell counts and Betti numbers") {
    struct Case {
        Coloring coloring;
        std::vector<std::size_t> cells;
        std::vector<std::size_t> betti;
    };
    auto klein = validate_characteristic(make_polytope(polygon(4)),
                                         {bv("10"), bv("01"), bv("11"), bv("01")});
    std::vector<Case> cases;
    cases.push_back({rp2_mu(), {3, 6, 4}, {1, 1, 1}});
    cases.push_back({torus_mu(), {4, 8, 4}, {1, 2, 1}});
    cases.push_back({klein, {4, 8, 4}, {1, 2, 1}});
    for (const Case& c : cases) {
        QuotientCellComplex cx = build_complex(c.coloring);
        CHECK_FALSE(cx.non_manifold);
        CHECK(counts(cx) == c.cells);
        CHECK(counts(cx) == count_oracle(c.coloring));
        BettiReport b = betti(cx);
        CHECK(b.betti == c.betti);
    }
}

TEST_CASE("moment-angle complexes of small polygons") {
    auto penta = make_polytope(polygon(5));
    QuotientCellComplex cx = build_complex(moment_angle_coloring(penta));
    CHECK(counts(cx) == std::vector<std::size_t>{40, 80, 32});
    BettiReport b = betti(cx);
    CHECK(b.betti == std::vector<std::size_t>{1, 10, 1});
    CHECK(b.hrk == 12);
    CHECK(b.euler == -8);
    CHECK(b.components == 1);

    auto tri = make_polytope(polygon(3));
    BettiReport s2 = betti(build_complex(moment_angle_coloring(tri)));
    CHECK(s2.cells_per_dim == std::vector<std::size_t>{6, 12, 8});
    CHECK(s2.betti == std::vector<std::size_t>{1, 0, 1});
}

TEST_CASE("glue-back component structure (figure-2 cases)") {
    Coloring mu = torus_mu();
    GlueSpec diag = make_glue_spec(mu, {3, 4}, {bv("10"), bv("10")});
    QuotientCellComplex cx = build_complex(glue_back_coloring(diag));
    CHECK(counts(cx) == std::vector<std::size_t>{16, 32, 16});
    ComponentInfo info = components(cx);
    CHECK(info.count == 2);
    BettiReport whole = betti(cx);
    CHECK(whole.betti == std::vector<std::size_t>{2, 4, 2});
    CHECK(whole.components == 2);

    for (std::uint32_t comp = 0; comp < info.count; ++comp) {
        QuotientCellComplex part = restrict_to_component(cx, info, comp);
        CHECK(counts(part) == std::vector<std::size_t>{8, 16, 8});
        CHECK(betti(part).betti == std::vector<std::size_t>{1, 2, 1});
    }

    GlueSpec indep = make_glue_spec(mu, {3, 4}, {bv("10"), bv("01")});
    QuotientCellComplex con = build_complex(glue_back_coloring(indep));
    CHECK(components(con).count == 1);
    CHECK(betti(con).betti == std::vector<std::size_t>{1, 2, 1});

    GlueSpec zero = make_glue_spec(mu, {3, 4}, {bv("00"), bv("00")});
    CHECK(components(build_complex(glue_back_coloring(zero))).count == 4);

    // restricting a connected complex is the identity on counts
    ComponentInfo cinfo = components(con);
    CHECK(counts(restrict_to_component(con, cinfo, 0)) == counts(con));
}

TEST_CASE("higher cells inherit the component of their closure") {
    Coloring mu = torus_mu();
    QuotientCellComplex cx = build_complex(glue_back_coloring(
        make_glue_spec(mu, {3, 4}, {bv("10"), bv("10")})));
    ComponentInfo info = components(cx);
    // every boundary cell of every cell shares its component
    for (int q = 1; q <= cx.dim; ++q) {
        const Gf2Matrix& b = cx.boundary[static_cast<std::size_t>(q)];
        for (std::size_t row = 0; row < b.rows(); ++row)
            for (std::size_t col = 0; col < b.cols(); ++col)
                if (b.get(row, col))
                    CHECK(info.cell_component[static_cast<std::size_t>(q)][row] ==
                          info.cell_component[static_cast<std::size_t>(q - 1)][col]);
    }
}

TEST_CASE("translate action") {
    auto sq = make_polytope(polygon(4));
    QuotientCellComplex cx = build_complex(moment_angle_coloring(sq));

    auto id = translate_action(cx, BitVector(4));
    for (std::size_t q = 0; q < id.size(); ++q)
        for (std::size_t i = 0; i < id[q].size(); ++i) CHECK(id[q][i] == i);

    auto perm = translate_action(cx, bv("1111"));
    CHECK(action_commutes_with_boundary(cx, perm));
    // top cells: free involution, 8 two-cycles
    std::size_t fixed = 0, swaps = 0;
    for (std::size_t i = 0; i < perm[2].size(); ++i) {
        if (perm[2][i] == i) ++fixed;
        CHECK(perm[2][perm[2][i]] == i);
        if (perm[2][i] > i) ++swaps;
    }
    CHECK(fixed == 0);
    CHECK(swaps == 8);

    CHECK_THROWS_AS(translate_action(cx, bv("111")), WidthMismatch);
}

TEST_CASE("translations in the lambda block act freely on glue-backs") {
    Coloring mu = torus_mu();
    for (const char* lam1 : {"10", "01", "11", "00"}) {
        GlueSpec s = make_glue_spec(mu, {3, 4}, {bv(lam1), bv("01")});
        QuotientCellComplex cx = build_complex(glue_back_coloring(s));
        for (std::uint64_t g = 1; g < 4; ++g) {
            BitVector vec = BitVector::concat(BitVector(2), BitVector(2, g));
            auto perm = translate_action(cx, vec);
            CHECK(action_commutes_with_boundary(cx, perm));
            for (const auto& dimperm : perm)
                for (std::size_t i = 0; i < dimperm.size(); ++i) CHECK(dimperm[i] != i);
        }
    }
}

TEST_CASE("translate action commutes with the boundary (random)") {
    std::mt19937_64 rng(31);
    Coloring mu = torus_mu();
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<BitVector> lambda{BitVector(2, rng()), BitVector(2, rng())};
        QuotientCellComplex cx =
            build_complex(glue_back_coloring(make_glue_spec(mu, {3, 4}, lambda)));
        BitVector g(cx.r, rng());
        auto perm = translate_action(cx, g);
        CHECK(action_commutes_with_boundary(cx, perm));
        // involution
        for (std::size_t q = 0; q < perm.size(); ++q)
            for (std::size_t i = 0; i < perm[q].size(); ++i) CHECK(perm[q][perm[q][i]] == i);
    }
}

TEST_CASE("facial subcomplexes") {
    QuotientCellComplex rp2 = build_complex(rp2_mu());
    QuotientCellComplex circle = facial_subcomplex(rp2, 1);
    CHECK(circle.dim == 1);
    CHECK(counts(circle) == std::vector<std::size_t>{2, 2});
    BettiReport b = betti(circle);
    CHECK(b.betti == std::vector<std::size_t>{1, 1});
    CHECK(b.hrk == 2);

    QuotientCellComplex torus = build_complex(torus_mu());
    BettiReport c = betti(facial_subcomplex(torus, 1));
    CHECK(c.betti == std::vector<std::size_t>{1, 1});  // one circle

    auto penta = make_polytope(polygon(5));
    QuotientCellComplex zp = build_complex(moment_angle_coloring(penta));
    QuotientCellComplex fz = facial_subcomplex(zp, 1);
    CHECK(counts(fz) == std::vector<std::size_t>{16, 16});
    BettiReport fb = betti(fz);
    CHECK(fb.betti[0] == fb.betti[1]);  // disjoint circles
    CHECK(fb.hrk == 2 * fb.betti[0]);
    CHECK(fb.hrk >= 8);  // >= 2^(d-n-...): the facial bound for k = 3

    CHECK_THROWS_AS(facial_subcomplex(rp2, 9), Error);

    // translations act on facial subcomplexes through the lookup path
    auto perm = translate_action(fz, BitVector::parse("01011"));
    CHECK(action_commutes_with_boundary(fz, perm));
    for (std::size_t q = 0; q < perm.size(); ++q)
        for (std::size_t i = 0; i < perm[q].size(); ++i) CHECK(perm[q][perm[q][i]] == i);
}

TEST_CASE("translations off a component are rejected") {
    Coloring mu = torus_mu();
    QuotientCellComplex cx = build_complex(glue_back_coloring(
        make_glue_spec(mu, {3, 4}, {bv("10"), bv("10")})));
    ComponentInfo info = components(cx);
    QuotientCellComplex part = restrict_to_component(cx, info, 0);
    // the lambda-block translation (00|01) swaps the two components
    CHECK_THROWS_AS(translate_action(part, bv("0001")), Error);
    // translations inside the component's subgroup stay put
    auto perm = translate_action(part, bv("1010"));
    CHECK(action_commutes_with_boundary(part, perm));
}

TEST_CASE("complexes_identical") {
    Coloring mu = torus_mu();
    QuotientCellComplex cx = build_complex(glue_back_coloring(
        make_glue_spec(mu, {3, 4}, {bv("10"), bv("01")})));
    CHECK(complexes_identical(cx, cx, Gf2Matrix::identity(4)));

    QuotientCellComplex swapped = build_complex(glue_back_coloring(
        make_glue_spec(mu, {3, 4}, {bv("01"), bv("10")})));
    auto phi_lambda = solve_label_isomorphism({bv("10"), bv("01")}, 2, {bv("01"), bv("10")}, 2);
    REQUIRE(phi_lambda);
    Gf2Matrix phi = Gf2Matrix::block_diagonal(Gf2Matrix::identity(2), *phi_lambda);
    CHECK(complexes_identical(cx, swapped, phi));

    // rank mismatch: no label isomorphism exists at all
    CHECK_FALSE(solve_label_isomorphism({bv("10"), bv("01")}, 2, {bv("10"), bv("10")}, 2));

    // a singular map collapses cosets and fails the bijection test
    CHECK_FALSE(complexes_identical(cx, cx, Gf2Matrix(4, 4)));

    // triangular relabeling: still identical
    QuotientCellComplex tilted = build_complex(glue_back_coloring(
        make_glue_spec(mu, {3, 4}, {bv("11"), bv("01")})));
    CHECK(complexes_identical(cx, tilted,
                              Gf2Matrix::block_diagonal(
                                  Gf2Matrix::identity(2),
                                  *solve_label_isomorphism({bv("10"), bv("01")}, 2,
                                                           {bv("11"), bv("01")}, 2))));
}

TEST_CASE("Poincare duality and Euler relations on closed connected complexes") {
    std::vector<Coloring> cases{rp2_mu(), torus_mu()};
    auto klein = validate_characteristic(make_polytope(polygon(4)),
                                         {bv("10"), bv("01"), bv("11"), bv("01")});
    cases.push_back(klein);
    for (const CorpusEntry& e : builtin_corpus())
        if (e.polytope->d <= 8) cases.push_back(e.mu);
    for (const Coloring& c : cases) {
        QuotientCellComplex cx = build_complex(c);
        BettiReport b = betti(cx);
        long long alt = 0;
        for (int q = 0; q <= cx.dim; ++q)
            alt += (q % 2 ? -1 : 1) * static_cast<long long>(b.betti[static_cast<std::size_t>(q)]);
        CHECK(alt == b.euler);
        if (components(cx).count == 1 && !cx.non_manifold) {
            for (int q = 0; q <= cx.dim; ++q)
                CHECK(b.betti[static_cast<std::size_t>(q)] ==
                      b.betti[static_cast<std::size_t>(cx.dim - q)]);
        }
        if (cx.dim % 2 == 1) CHECK(b.euler == 0);
    }
}

TEST_CASE("polygon moment-angle manifolds realize the classical surface genus") {
    // Z_P of an m-gon is the closed surface of genus 1 + (m-4) 2^(m-3)
    for (int m = 3; m <= 9; ++m) {
        auto p = make_polytope(polygon(m));
        BettiReport b = betti(build_complex(moment_angle_coloring(p), 2), 2);
        long long genus = 1 + (m - 4) * (1LL << (m - 3));
        CHECK(b.betti[0] == 1);
        CHECK(b.betti[2] == 1);
        CHECK(static_cast<long long>(b.betti[1]) == 2 * genus);
        CHECK(b.euler == 2 - 2 * genus);
    }
}

TEST_CASE("betti is thread-count independent") {
    auto hexa = make_polytope(polygon(6));
    QuotientCellComplex cx = build_complex(moment_angle_coloring(hexa), 2);
    BettiReport b1 = betti(cx, 1);
    BettiReport b2 = betti(cx, 2);
    BettiReport b4 = betti(cx, 4);
    CHECK(b1.betti == b2.betti);
    CHECK(b1.betti == b4.betti);
    CHECK(b1.hrk == 36);
}

namespace {

// Betti numbers through a textbook elimination, independent of the packed
// rank engine.
std::size_t naive_matrix_rank(const Gf2Matrix& m) {
    std::vector<std::vector<int>> a(m.rows(), std::vector<int>(m.cols(), 0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = m.get(r, c);
    std::size_t rank = 0, rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && !a[p][c]) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t r = 0; r < rows; ++r)
            if (r != rank && a[r][c])
                for (std::size_t k = 0; k < cols; ++k) a[r][k] ^= a[rank][k];
        ++rank;
    }
    return rank;
}

std::vector<std::size_t> naive_betti(const QuotientCellComplex& cx) {
    std::vector<std::size_t> ranks(static_cast<std::size_t>(cx.dim) + 2, 0);
    for (int q = 1; q <= cx.dim; ++q)
        ranks[static_cast<std::size_t>(q)] =
            naive_matrix_rank(cx.boundary[static_cast<std::size_t>(q)]);
    std::vector<std::size_t> out;
    for (int q = 0; q <= cx.dim; ++q)
        out.push_back(cx.cells[static_cast<std::size_t>(q)].size() -
                      ranks[static_cast<std::size_t>(q)] -
                      ranks[static_cast<std::size_t>(q) + 1]);
    return out;
}

}  // namespace

TEST_CASE("betti agrees with a naive elimination oracle on random specs") {
    std::mt19937_64 rng(61);
    for (const char* name : {"simplex2", "square", "square_klein", "cube2"}) {
        const CorpusEntry& e = *find_entry(name);
        int k = e.polytope->k();
        for (int trial = 0; trial < 4; ++trial) {
            int m = 1 + static_cast<int>(rng() % 2);
            std::vector<BitVector> lambda;
            for (int i = 0; i < k; ++i) lambda.push_back(BitVector(m, rng()));
            QuotientCellComplex cx =
                build_complex(glue_back_coloring(make_glue_spec(e.mu, e.v0, lambda)));
            BettiReport b = betti(cx, 2);
            CHECK(b.betti == naive_betti(cx));
            // union-find component count is an independent route to betti_0
            CHECK(components(cx).count == b.betti[0]);
        }
    }
}

TEST_CASE("boundary matrices are bit-identical across build thread counts") {
    const CorpusEntry& e = *find_entry("pentagonal_prism");
    QuotientCellComplex a = build_complex(moment_angle_coloring(e.polytope), 1);
    QuotientCellComplex b = build_complex(moment_angle_coloring(e.polytope), 4);
    REQUIRE(a.cells.size() == b.cells.size());
    for (int q = 1; q <= a.dim; ++q)
        CHECK(a.boundary[static_cast<std::size_t>(q)] == b.boundary[static_cast<std::size_t>(q)]);
}

TEST_CASE("non-manifold colorings still build with a warning flag") {
    auto sq = make_polytope(polygon(4));
    Coloring bad = make_coloring(sq, 2, {bv("10"), bv("10"), bv("01"), bv("01")});
    QuotientCellComplex cx = build_complex(bad);
    CHECK(cx.non_manifold);
    CHECK_NOTHROW(betti(cx));
}
