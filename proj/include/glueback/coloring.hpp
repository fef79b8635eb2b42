// coloring.hpp -- label systems on polytope facets: characteristic
// functions, the moment-angle coloring, glue-back label systems on a cut
// vertex, and the subgroup constructions that realize glue-backs as
// partial quotients.
//
// Conventions fixed here:
//   * cut facets are the facets not incident to v0, in ascending index
//     order; panel P_i is the i-th cut facet;
//   * glue-back labels have the mu block in coordinates [0,n) and the
//     lambda block in [n,n+m);
//   * subgroups attached to (P, mu, v0) live in plain facet coordinates
//     of (Z_2)^d (coordinate i-1 belongs to facet i), with mu's target
//     identified with the coordinates of the v0-incident facets via the
//     basis {mu(F) : F incident to v0}.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gf2.hpp"
#include "polytope.hpp"

namespace glueback {

using PolytopePtr = std::shared_ptr<const SimplePolytope>;

inline PolytopePtr make_polytope(SimplePolytope p) {
    return std::make_shared<const SimplePolytope>(std::move(p));
}

inline std::string vertex_str(const std::vector<int>& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out + "}";
}

struct SingularAtVertex : ValidationError {
    std::vector<int> vertex;
    explicit SingularAtVertex(std::vector<int> v)
        : ValidationError("labels are linearly dependent at vertex " + vertex_str(v)),
          vertex(std::move(v)) {}
};

struct NotFreeError : ValidationError {
    std::vector<int> vertex;
    explicit NotFreeError(std::vector<int> v)
        : ValidationError("subgroup meets the isotropy of vertex " + vertex_str(v)),
          vertex(std::move(v)) {}
};

struct Coloring {
    PolytopePtr polytope;
    int r = 0;                      // label width
    std::vector<BitVector> labels;  // size d, labels[i] belongs to facet i+1

    const BitVector& label_of_facet(int facet) const {
        return labels[static_cast<std::size_t>(facet - 1)];
    }

    Subspace face_subgroup(const std::vector<int>& sigma) const {
        Subspace s = Subspace::zero(r);
        for (int i : sigma) s.insert(label_of_facet(i));
        return s;
    }
};

inline Coloring make_coloring(PolytopePtr p, int r, std::vector<BitVector> labels) {
    if (static_cast<int>(labels.size()) != p->d)
        throw ValidationError("coloring needs exactly d=" + std::to_string(p->d) + " labels, got " +
                              std::to_string(labels.size()));
    for (const BitVector& v : labels)
        if (v.width() != r)
            throw WidthMismatch("coloring label width " + std::to_string(v.width()) +
                                " != r=" + std::to_string(r));
    return Coloring{std::move(p), r, std::move(labels)};
}

// First vertex whose labels are dependent, if any. Independence at every
// vertex implies independence at every face (faces are vertex subsets).
inline std::optional<std::vector<int>> first_dependent_vertex(const Coloring& c) {
    for (const auto& v : c.polytope->vertices)
        if (c.face_subgroup(v).rank() != static_cast<int>(v.size())) return v;
    return std::nullopt;
}

// A characteristic function is a width-n coloring nonsingular at every
// vertex.
inline Coloring validate_characteristic(PolytopePtr p, std::vector<BitVector> labels) {
    if (!labels.empty() && labels.front().width() != p->n)
        throw ValidationError("characteristic function width must equal n=" +
                              std::to_string(p->n));
    int n_width = p->n;
    Coloring c = make_coloring(std::move(p), n_width, std::move(labels));
    if (auto bad = first_dependent_vertex(c)) throw SingularAtVertex(*bad);
    return c;
}

inline Coloring moment_angle_coloring(PolytopePtr p) {
    std::vector<BitVector> labels;
    labels.reserve(static_cast<std::size_t>(p->d));
    for (int i = 0; i < p->d; ++i) labels.push_back(BitVector::unit(p->d, i));
    int r = p->d;
    return make_coloring(std::move(p), r, std::move(labels));
}

struct RankInfo {
    Subspace L_lambda;
    int rank = 0;
    bool maximally_independent = false;
};

struct GlueSpec {
    PolytopePtr polytope;
    Coloring mu;                    // characteristic function, width n
    std::vector<int> v0;            // chosen vertex
    std::vector<int> cut_facets;    // facets not incident to v0, ascending
    int k = 0;                      // number of panels
    int m = 0;                      // lambda width
    std::vector<BitVector> lambda;  // k panel colors of width m
};

inline std::vector<int> facets_not_incident(const SimplePolytope& p, const std::vector<int>& v0) {
    std::vector<int> cut;
    for (int i = 1; i <= p.d; ++i)
        if (std::find(v0.begin(), v0.end(), i) == v0.end()) cut.push_back(i);
    return cut;
}

inline GlueSpec make_glue_spec(Coloring mu, std::vector<int> v0, std::vector<BitVector> lambda) {
    GlueSpec s;
    s.polytope = mu.polytope;
    const SimplePolytope& p = *s.polytope;
    if (mu.r != p.n) throw ValidationError("glue spec: mu must have width n");
    if (auto bad = first_dependent_vertex(mu)) throw SingularAtVertex(*bad);
    std::sort(v0.begin(), v0.end());
    if (!p.has_vertex(v0))
        throw ValidationError("glue spec: v0 " + vertex_str(v0) + " is not a vertex of " + p.name);
    s.mu = std::move(mu);
    s.v0 = std::move(v0);
    s.cut_facets = facets_not_incident(p, s.v0);
    s.k = static_cast<int>(s.cut_facets.size());
    if (static_cast<int>(lambda.size()) != s.k)
        throw ValidationError("glue spec: lambda needs k=" + std::to_string(s.k) +
                              " panel colors, got " + std::to_string(lambda.size()));
    s.m = lambda.empty() ? 0 : lambda.front().width();
    for (const BitVector& v : lambda)
        if (v.width() != s.m) throw WidthMismatch("glue spec: mixed lambda widths");
    s.lambda = std::move(lambda);
    return s;
}

// Combined label system of the glue-back M(V^n, lambda) as a quotient of
// P^n x (Z_2)^(n+m): cut facet P_i carries (mu(F_i) | lambda_i), facets
// through v0 carry (mu(F_i) | 0).
inline Coloring glue_back_coloring(const GlueSpec& s) {
    const SimplePolytope& p = *s.polytope;
    std::vector<BitVector> labels;
    labels.reserve(static_cast<std::size_t>(p.d));
    for (int i = 1; i <= p.d; ++i) {
        auto it = std::find(s.cut_facets.begin(), s.cut_facets.end(), i);
        BitVector lam(s.m);
        if (it != s.cut_facets.end())
            lam = s.lambda[static_cast<std::size_t>(it - s.cut_facets.begin())];
        labels.push_back(BitVector::concat(s.mu.label_of_facet(i), lam));
    }
    return make_coloring(s.polytope, p.n + s.m, std::move(labels));
}

inline RankInfo rank_info(const GlueSpec& s) {
    RankInfo info;
    info.L_lambda = Subspace::span_of(s.m, s.lambda);
    info.rank = info.L_lambda.rank();
    info.maximally_independent = (info.rank == s.k);
    return info;
}

// Panel indices (0-based) whose colors greedily form a basis of L_lambda.
inline std::vector<std::size_t> basis_panels(const GlueSpec& s) {
    std::vector<std::size_t> out;
    Subspace seen = Subspace::zero(s.m);
    for (std::size_t i = 0; i < s.lambda.size(); ++i) {
        if (!seen.contains(s.lambda[i])) {
            seen.insert(s.lambda[i]);
            out.push_back(i);
        }
    }
    return out;
}

// The coloring sequence lambda_0, ..., lambda_{k-s} that raises rank by one
// per step: the j-th step replaces the color of the j-th non-basis panel by
// the j-th deterministic extension vector (unit vectors tried in order).
// Requires m == k. The final coloring is maximally independent.
inline std::vector<GlueSpec> complete_to_max(const GlueSpec& s) {
    if (s.m != s.k)
        throw ValidationError("complete_to_max requires m == k (got m=" + std::to_string(s.m) +
                              ", k=" + std::to_string(s.k) + ")");
    Subspace span = Subspace::span_of(s.m, s.lambda);
    std::vector<std::size_t> keep = basis_panels(s);
    std::vector<std::size_t> replace;
    for (std::size_t i = 0; i < s.lambda.size(); ++i)
        if (std::find(keep.begin(), keep.end(), i) == keep.end()) replace.push_back(i);

    std::vector<BitVector> omegas;
    for (int c = 0; c < s.m && static_cast<int>(omegas.size()) < static_cast<int>(replace.size());
         ++c) {
        BitVector e = BitVector::unit(s.m, c);
        if (!span.contains(e)) {
            span.insert(e);
            omegas.push_back(e);
        }
    }
    if (omegas.size() != replace.size())
        throw InternalError("basis completion failed");

    std::vector<GlueSpec> chain{s};
    GlueSpec cur = s;
    for (std::size_t j = 0; j < replace.size(); ++j) {
        cur.lambda[replace[j]] = omegas[j];
        chain.push_back(cur);
    }
    return chain;
}

namespace detail {

// n x n basis-change A with A * mu(F) = e_t for the t-th v0-incident facet
// F (ascending). Well-defined because mu is nonsingular at v0.
inline Gf2Matrix v0_normalization(const Coloring& mu, const std::vector<int>& v0) {
    const int n = mu.r;
    Gf2Matrix basis(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    std::vector<int> inc = v0;
    std::sort(inc.begin(), inc.end());
    for (int t = 0; t < n; ++t) {
        BitVector col = mu.label_of_facet(inc[static_cast<std::size_t>(t)]);
        for (int i = 0; i < n; ++i)
            if (col.bit(i)) basis.set(static_cast<std::size_t>(i), static_cast<std::size_t>(t));
    }
    auto inv = basis.inverse();
    if (!inv) throw SingularAtVertex(v0);
    return *inv;
}

}  // namespace detail

// d x k matrix of the isomorphism sigma: (Z_2)^k -> H_mu sending the i-th
// cut coordinate e_i to e_{c_i} + iota(mu(F_{c_i})), where iota embeds
// mu's target into the coordinates of the v0-incident facets (normalized
// so the t-th v0 facet's color reads as the t-th unit vector).
inline Gf2Matrix sigma_matrix(const Coloring& mu, const std::vector<int>& v0) {
    const SimplePolytope& p = *mu.polytope;
    std::vector<int> cut = facets_not_incident(p, v0);
    std::vector<int> inc = v0;
    std::sort(inc.begin(), inc.end());
    Gf2Matrix norm = detail::v0_normalization(mu, v0);

    Gf2Matrix sig(static_cast<std::size_t>(p.d), cut.size());
    for (std::size_t i = 0; i < cut.size(); ++i) {
        sig.set(static_cast<std::size_t>(cut[i] - 1), i);
        BitVector w = norm.apply(mu.label_of_facet(cut[i]));
        for (int t = 0; t < p.n; ++t)
            if (w.bit(t))
                sig.set(static_cast<std::size_t>(inc[static_cast<std::size_t>(t)] - 1), i);
    }
    return sig;
}

inline Subspace sigma_image(const Coloring& mu, const std::vector<int>& v0, const Subspace& n_sub) {
    std::vector<int> cut = facets_not_incident(*mu.polytope, v0);
    if (n_sub.ambient_width() != static_cast<int>(cut.size()))
        throw WidthMismatch("sigma_image: subgroup must live in (Z_2)^k");
    return n_sub.image(sigma_matrix(mu, v0));
}

// H_mu = sigma((Z_2)^k): the rank-k subgroup of (Z_2)^d generated by
// e_i + iota(mu(F_i)) over the cut facets. Acts freely on Z_P.
inline Subspace h_mu_subgroup(const Coloring& mu, const std::vector<int>& v0) {
    std::vector<int> cut = facets_not_incident(*mu.polytope, v0);
    return Subspace::full(static_cast<int>(cut.size())).image(sigma_matrix(mu, v0));
}

// N*_lambda in cut coordinates: the kernel of the panel labeling map
// e_i -> lambda(P_i), presented by one generator per non-basis panel
// (the panel coordinate plus the basis coordinates of its color).
// Requires rank(lambda) == m, i.e. a connected total space.
inline Subspace n_star_subgroup(const GlueSpec& s) {
    RankInfo info = rank_info(s);
    if (info.rank != s.m)
        throw ValidationError("n_star_subgroup: rank(lambda)=" + std::to_string(info.rank) +
                              " < m=" + std::to_string(s.m) + " (disconnected: reduce m)");
    std::vector<std::size_t> bas = basis_panels(s);
    Gf2Matrix basis_mat(static_cast<std::size_t>(s.m), static_cast<std::size_t>(s.m));
    for (std::size_t j = 0; j < bas.size(); ++j)
        for (int i = 0; i < s.m; ++i)
            if (s.lambda[bas[j]].bit(i)) basis_mat.set(static_cast<std::size_t>(i), j);
    auto inv = basis_mat.inverse();
    if (!inv) throw InternalError("basis panels not invertible");

    std::vector<BitVector> gens;
    for (std::size_t i = 0; i < s.lambda.size(); ++i) {
        if (std::find(bas.begin(), bas.end(), i) != bas.end()) continue;
        BitVector coeff = inv->apply(s.lambda[i]);  // coordinates over the basis panels
        BitVector g(s.k);
        g.set_bit(static_cast<int>(i));
        for (int j = 0; j < s.m; ++j)
            if (coeff.bit(j)) g.set_bit(static_cast<int>(bas[static_cast<std::size_t>(j)]));
        gens.push_back(g);
    }
    return Subspace::span_of(s.k, gens);
}

// Quotient coloring of c by a freely acting subgroup H: width drops by
// rank(H) and labels are pushed through the canonical projection. Raises
// NotFreeError naming the first vertex whose isotropy meets H.
inline Coloring partial_quotient_coloring(const Coloring& c, const Subspace& h) {
    if (h.ambient_width() != c.r)
        throw WidthMismatch("partial quotient: subgroup ambient " +
                            std::to_string(h.ambient_width()) + " != coloring width " +
                            std::to_string(c.r));
    for (const auto& v : c.polytope->vertices)
        if (!h.intersection_trivial(c.face_subgroup(v))) throw NotFreeError(v);
    Gf2Matrix q = h.quotient_projection();
    std::vector<BitVector> labels;
    labels.reserve(c.labels.size());
    for (const BitVector& l : c.labels) labels.push_back(q.apply(l));
    return make_coloring(c.polytope, c.r - h.rank(), std::move(labels));
}

}  // namespace glueback
