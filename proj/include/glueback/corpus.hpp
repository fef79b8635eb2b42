// corpus.hpp -- built-in polytopes with characteristic functions, shipped
// in the binary so verification runs need no external files. Names are
// stable: simplex2..4, cube2..4, polygon3..8, square (= polygon4 with the
// torus coloring), square_klein, pentagonal_prism, dodecahedron.

#pragma once

#include <string>
#include <vector>

#include "coloring.hpp"
#include "polytope.hpp"

namespace glueback {

struct CorpusEntry {
    std::string name;
    PolytopePtr polytope;
    Coloring mu;
    std::vector<int> v0;  // default cut vertex: first vertex in sorted order
    std::string note;
};

namespace corpus_detail {

inline std::vector<BitVector> simplex_mu(int n) {
    std::vector<BitVector> mu;
    for (int i = 0; i < n; ++i) mu.push_back(BitVector::unit(n, i));
    BitVector all(n);
    for (int i = 0; i < n; ++i) all.set_bit(i);
    mu.push_back(all);
    return mu;
}

inline std::vector<BitVector> cube_mu(int n) {
    std::vector<BitVector> mu;
    for (int i = 0; i < n; ++i) {
        mu.push_back(BitVector::unit(n, i));
        mu.push_back(BitVector::unit(n, i));
    }
    return mu;
}

inline std::vector<BitVector> polygon_mu(int m) {
    std::vector<BitVector> mu;
    for (int i = 1; i <= m; ++i) mu.push_back(BitVector::unit(2, (i - 1) % 2));
    if (m % 2 == 1) mu.back() = BitVector::parse("11");
    return mu;
}

// Characteristic function of a product: block sum of the factors'.
inline std::vector<BitVector> product_mu(const SimplePolytope& a, const std::vector<BitVector>& mua,
                                         const SimplePolytope& b,
                                         const std::vector<BitVector>& mub) {
    std::vector<BitVector> mu;
    for (const BitVector& l : mua) mu.push_back(BitVector::concat(l, BitVector(b.n)));
    for (const BitVector& l : mub) mu.push_back(BitVector::concat(BitVector(a.n), l));
    return mu;
}

// Dual complex of the dodecahedron: 12 facets, 20 vertices (triangles of
// the icosahedron). Facet 1 is the top face, 2..6 the upper ring, 7..11
// the lower ring, 12 the bottom face.
inline SimplePolytope dodecahedron() {
    SimplePolytope p;
    p.name = "dodecahedron";
    p.n = 3;
    p.d = 12;
    p.vertices = {
        {1, 2, 3},  {1, 3, 4},  {1, 4, 5},   {1, 5, 6},   {1, 2, 6},
        {7, 8, 12}, {8, 9, 12}, {9, 10, 12}, {10, 11, 12}, {7, 11, 12},
        {2, 3, 7},  {3, 7, 8},  {3, 4, 8},   {4, 8, 9},   {4, 5, 9},
        {5, 9, 10}, {5, 6, 10}, {6, 10, 11}, {2, 6, 11},  {2, 7, 11},
    };
    std::string context = p.name;
    return validate_polytope(std::move(p), context);
}

// Proper 4-coloring of the face adjacency graph with the colors
// e1, e2, e3, e1+e2+e3: any three distinct colors are independent, so this
// is a characteristic function.
inline std::vector<BitVector> dodecahedron_mu() {
    std::vector<BitVector> mu;
    for (const char* s : {"100", "010", "001", "010", "001", "111", "111", "100", "111", "100",
                          "001", "010"})
        mu.push_back(BitVector::parse(s));
    return mu;
}

}  // namespace corpus_detail

inline CorpusEntry make_entry(std::string name, SimplePolytope poly, std::vector<BitVector> mu,
                              std::string note = "") {
    CorpusEntry e;
    e.name = std::move(name);
    poly.name = e.name;
    e.polytope = make_polytope(std::move(poly));
    e.mu = validate_characteristic(e.polytope, std::move(mu));
    e.v0 = e.polytope->vertices.front();
    e.note = std::move(note);
    return e;
}

inline const std::vector<CorpusEntry>& builtin_corpus() {
    static const std::vector<CorpusEntry> entries = [] {
        using namespace corpus_detail;
        std::vector<CorpusEntry> out;
        for (int n = 2; n <= 4; ++n)
            out.push_back(make_entry("simplex" + std::to_string(n), simplex(n), simplex_mu(n),
                                     "real projective space coloring"));
        for (int n = 2; n <= 4; ++n)
            out.push_back(make_entry("cube" + std::to_string(n), cube(n), cube_mu(n),
                                     "opposite facets share a basis vector"));
        for (int m = 3; m <= 8; ++m)
            out.push_back(make_entry("polygon" + std::to_string(m), polygon(m), polygon_mu(m)));
        out.push_back(make_entry("square", polygon(4),
                                 {BitVector::parse("10"), BitVector::parse("01"),
                                  BitVector::parse("10"), BitVector::parse("01")},
                                 "torus small cover"));
        out.push_back(make_entry("square_klein", polygon(4),
                                 {BitVector::parse("10"), BitVector::parse("01"),
                                  BitVector::parse("11"), BitVector::parse("01")},
                                 "Klein bottle small cover"));
        {
            SimplePolytope penta = polygon(5), seg = simplex(1);
            out.push_back(make_entry(
                "pentagonal_prism", product(penta, seg),
                product_mu(penta, polygon_mu(5), seg, simplex_mu(1))));
        }
        out.push_back(make_entry("dodecahedron", dodecahedron(), dodecahedron_mu(),
                                 "4-colored faces; moment-angle complex has 69632 cells"));
        return out;
    }();
    return entries;
}

inline const CorpusEntry* find_entry(const std::string& name) {
    for (const CorpusEntry& e : builtin_corpus())
        if (e.name == name) return &e;
    return nullptr;
}

}  // namespace glueback
