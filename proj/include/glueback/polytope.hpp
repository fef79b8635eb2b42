// polytope.hpp -- simple polytopes encoded by their dual simplicial
// complexes: vertices of the complex are facet labels 1..d, maximal
// simplices are the polytope vertices (n facets each). Validation accepts
// any complex passing the ridge and connectivity checks; every downstream
// construction uses only this combinatorics.
//
// Faces are carried as sorted facet-index sets; the empty set denotes the
// whole polytope (the top cell).

#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "gf2.hpp"

namespace glueback {

struct SimplePolytope {
    std::string name;
    int n = 0;  // dimension
    int d = 0;  // facet count
    std::vector<std::string> facet_names;        // size d, default "F1".."Fd"
    std::vector<std::vector<int>> vertices;      // sorted n-subsets of 1..d, sorted list

    int k() const { return d - n; }

    bool has_vertex(const std::vector<int>& v) const {
        return std::binary_search(vertices.begin(), vertices.end(), v);
    }
};

struct Face {
    std::vector<int> sigma;  // sorted facet indices containing the face; empty = top cell
    int dim = 0;             // n - |sigma|
};

struct FHVector {
    std::vector<long long> f;  // f[i] = number of i-dimensional faces of P, i = 0..n-1
    std::vector<long long> h;  // h[0..n]
};

namespace detail {

inline std::uint64_t face_mask(const std::vector<int>& sigma) {
    std::uint64_t m = 0;
    for (int i : sigma) m |= std::uint64_t{1} << (i - 1);
    return m;
}

}  // namespace detail

// Validates the dual-complex invariants; diagnostics name the offending
// simplex. `context` prefixes messages (file name or builder name).
inline SimplePolytope validate_polytope(SimplePolytope p, const std::string& context = "") {
    const std::string at = context.empty() ? "" : context + ": ";
    auto simplex_str = [](const std::vector<int>& s) {
        std::string out = "{";
        for (std::size_t i = 0; i < s.size(); ++i)
            out += (i ? "," : "") + std::to_string(s[i]);
        return out + "}";
    };

    if (p.n < 1) throw ValidationError(at + "dimension n must be >= 1");
    if (p.d < p.n + 1)
        throw ValidationError(at + "facet count d=" + std::to_string(p.d) +
                              " must be >= n+1=" + std::to_string(p.n + 1));
    if (p.d > kMaxWidth)
        throw ValidationError(at + "facet count d=" + std::to_string(p.d) +
                              " exceeds the supported maximum " + std::to_string(kMaxWidth));
    if (p.vertices.empty()) throw ValidationError(at + "no vertices given");

    if (p.facet_names.empty()) {
        for (int i = 1; i <= p.d; ++i) p.facet_names.push_back("F" + std::to_string(i));
    } else if (static_cast<int>(p.facet_names.size()) != p.d) {
        throw ValidationError(at + "facet_names must have exactly d entries");
    }

    std::vector<char> used(static_cast<std::size_t>(p.d) + 1, 0);
    for (auto& v : p.vertices) {
        std::sort(v.begin(), v.end());
        if (static_cast<int>(v.size()) != p.n)
            throw ValidationError(at + "vertex " + simplex_str(v) + " has " +
                                  std::to_string(v.size()) + " facets, expected n=" +
                                  std::to_string(p.n));
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] < 1 || v[i] > p.d)
                throw ValidationError(at + "vertex " + simplex_str(v) +
                                      " references facet index out of range 1.." +
                                      std::to_string(p.d));
            if (i > 0 && v[i] == v[i - 1])
                throw ValidationError(at + "vertex " + simplex_str(v) + " repeats a facet");
            used[static_cast<std::size_t>(v[i])] = 1;
        }
    }
    std::sort(p.vertices.begin(), p.vertices.end());
    for (std::size_t i = 1; i < p.vertices.size(); ++i)
        if (p.vertices[i] == p.vertices[i - 1])
            throw ValidationError(at + "duplicate vertex " + simplex_str(p.vertices[i]));
    for (int i = 1; i <= p.d; ++i)
        if (!used[static_cast<std::size_t>(i)])
            throw ValidationError(at + "facet " + std::to_string(i) +
                                  " appears in no vertex");

    // Ridge condition: every (n-1)-subset of a vertex lies in exactly two
    // vertices (dual of: every edge of P joins two vertices). n = 1 has the
    // empty ridge, which must lie in exactly two vertices as well.
    std::map<std::vector<int>, int> ridge_count;
    for (const auto& v : p.vertices) {
        for (int skip = 0; skip < p.n; ++skip) {
            std::vector<int> ridge;
            ridge.reserve(static_cast<std::size_t>(p.n) - 1);
            for (int i = 0; i < p.n; ++i)
                if (i != skip) ridge.push_back(v[i]);
            ++ridge_count[ridge];
        }
    }
    for (const auto& [ridge, cnt] : ridge_count)
        if (cnt != 2)
            throw ValidationError(at + "ridge " + simplex_str(ridge) + " lies in " +
                                  std::to_string(cnt) + " vertices, expected 2");

    // Connectivity of the ridge graph.
    std::map<std::vector<int>, std::vector<std::size_t>> by_ridge;
    for (std::size_t vi = 0; vi < p.vertices.size(); ++vi) {
        const auto& v = p.vertices[vi];
        for (int skip = 0; skip < p.n; ++skip) {
            std::vector<int> ridge;
            for (int i = 0; i < p.n; ++i)
                if (i != skip) ridge.push_back(v[i]);
            by_ridge[ridge].push_back(vi);
        }
    }
    std::vector<char> seen(p.vertices.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::vector<std::vector<std::size_t>> adj(p.vertices.size());
    for (const auto& [ridge, vs] : by_ridge) {
        adj[vs[0]].push_back(vs[1]);
        adj[vs[1]].push_back(vs[0]);
    }
    while (!stack.empty()) {
        std::size_t cur = stack.back();
        stack.pop_back();
        for (std::size_t nb : adj[cur])
            if (!seen[nb]) {
                seen[nb] = 1;
                stack.push_back(nb);
            }
    }
    for (std::size_t vi = 0; vi < p.vertices.size(); ++vi)
        if (!seen[vi])
            throw ValidationError(at + "vertex graph is disconnected (vertex " +
                                  simplex_str(p.vertices[vi]) + " unreachable)");
    return p;
}

// All faces, graded by |sigma| (grade 0 is the top cell sigma = {}),
// each grade sorted lexicographically.
inline std::vector<std::vector<Face>> faces(const SimplePolytope& p) {
    std::vector<std::set<std::vector<int>>> by_size(static_cast<std::size_t>(p.n) + 1);
    for (const auto& v : p.vertices) {
        for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << p.n); ++sub) {
            std::vector<int> sigma;
            for (int i = 0; i < p.n; ++i)
                if ((sub >> i) & 1) sigma.push_back(v[static_cast<std::size_t>(i)]);
            by_size[sigma.size()].insert(std::move(sigma));
        }
    }
    std::vector<std::vector<Face>> out(static_cast<std::size_t>(p.n) + 1);
    for (int s = 0; s <= p.n; ++s)
        for (const auto& sigma : by_size[static_cast<std::size_t>(s)])
            out[static_cast<std::size_t>(s)].push_back(Face{sigma, p.n - s});
    return out;
}

// f from the face counts, h from the polynomial identity
//   sum_i h_i t^(n-i) = sum_{q=0..n} f_q (t-1)^q   with f_n := 1,
// where f_q counts q-dimensional faces of P. Equivalently the classical
// transform of the dual complex's f-vector.
inline FHVector fh_vector(const SimplePolytope& p) {
    auto graded = faces(p);
    FHVector fh;
    fh.f.resize(static_cast<std::size_t>(p.n));
    for (int s = 1; s <= p.n; ++s)
        fh.f[static_cast<std::size_t>(p.n - s)] =
            static_cast<long long>(graded[static_cast<std::size_t>(s)].size());

    std::vector<long long> poly(static_cast<std::size_t>(p.n) + 1, 0);  // coeffs of t^j
    std::vector<long long> power{1};                                    // (t-1)^q
    for (int q = 0; q <= p.n; ++q) {
        long long fq = (q == p.n) ? 1 : fh.f[static_cast<std::size_t>(q)];
        for (std::size_t j = 0; j < power.size(); ++j) poly[j] += fq * power[j];
        // power *= (t - 1)
        power.insert(power.begin(), 0);
        for (std::size_t j = 0; j + 1 < power.size(); ++j) power[j] -= power[j + 1];
    }
    fh.h.resize(static_cast<std::size_t>(p.n) + 1);
    for (int i = 0; i <= p.n; ++i)
        fh.h[static_cast<std::size_t>(i)] = poly[static_cast<std::size_t>(p.n - i)];
    return fh;
}

// ---- builders ----------------------------------------------------------

inline SimplePolytope simplex(int n) {
    if (n < 1) throw ValidationError("simplex: n must be >= 1");
    SimplePolytope p;
    p.name = "simplex" + std::to_string(n);
    p.n = n;
    p.d = n + 1;
    for (int skip = 1; skip <= n + 1; ++skip) {
        std::vector<int> v;
        for (int i = 1; i <= n + 1; ++i)
            if (i != skip) v.push_back(i);
        p.vertices.push_back(std::move(v));
    }
    std::string context = p.name;
    return validate_polytope(std::move(p), context);
}

inline SimplePolytope polygon(int m) {
    if (m < 3) throw ValidationError("polygon: m must be >= 3");
    SimplePolytope p;
    p.name = "polygon" + std::to_string(m);
    p.n = 2;
    p.d = m;
    for (int i = 1; i <= m; ++i) {
        int j = (i % m) + 1;
        p.vertices.push_back({std::min(i, j), std::max(i, j)});
    }
    std::string context = p.name;
    return validate_polytope(std::move(p), context);
}

// Product polytope: facets of q are re-indexed after the facets of p;
// vertices are unions of vertex pairs (dual join of the dual complexes).
inline SimplePolytope product(const SimplePolytope& a, const SimplePolytope& b) {
    SimplePolytope p;
    p.name = a.name + "x" + b.name;
    p.n = a.n + b.n;
    p.d = a.d + b.d;
    for (const auto& va : a.vertices) {
        for (const auto& vb : b.vertices) {
            std::vector<int> v = va;
            for (int i : vb) v.push_back(i + a.d);
            p.vertices.push_back(std::move(v));
        }
    }
    std::string context = p.name;
    return validate_polytope(std::move(p), context);
}

inline SimplePolytope cube(int n) {
    if (n < 1) throw ValidationError("cube: n must be >= 1");
    SimplePolytope p;
    p.name = "cube" + std::to_string(n);
    p.n = n;
    p.d = 2 * n;
    // facets 2i-1 and 2i are the opposite pair in axis i
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        std::vector<int> v;
        for (int i = 0; i < n; ++i) v.push_back(2 * i + 1 + static_cast<int>((bits >> i) & 1));
        p.vertices.push_back(std::move(v));
    }
    std::string context = p.name;
    return validate_polytope(std::move(p), context);
}

}  // namespace glueback
