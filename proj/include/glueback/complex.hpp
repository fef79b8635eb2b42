// complex.hpp -- the quotient cell complex of P^n x (Z_2)^r under a facet
// coloring. Cells in dimension n-s are pairs (face sigma with |sigma|=s,
// coset of G_sigma) where G_sigma is spanned by the labels of sigma's
// facets; the boundary of (sigma, C) covers (sigma+{j}, C mod G) once for
// every facet j extending sigma to a face. This realizes small covers,
// real moment-angle manifolds, glue-backs and partial quotients from the
// matching colorings.
//
// Cells are enumerated dimension-major, then face-lexicographic, then
// coset-index order, so boundary matrices are reproducible bit for bit.

#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coloring.hpp"
#include "gf2.hpp"
#include "polytope.hpp"

namespace glueback {

struct Cell {
    std::uint32_t face = 0;  // index into QuotientCellComplex::faces
    BitVector rep;           // canonical coset representative
};

struct BettiReport {
    std::vector<std::size_t> cells_per_dim;  // index = dimension
    std::vector<std::size_t> betti;
    std::size_t hrk = 0;
    long long euler = 0;
    std::size_t components = 0;  // = betti[0]
};

class QuotientCellComplex {
public:
    struct FaceInfo {
        std::vector<int> sigma;
        Subspace subgroup;          // G_sigma
        std::size_t offset = 0;     // first cell index within the dimension (full complexes)
        std::uint32_t vertex_face = 0;  // id of the smallest vertex face containing sigma
        std::vector<std::uint32_t> up;  // ids of faces sigma + {j}
    };

    PolytopePtr polytope;
    Coloring coloring;
    int dim = 0;
    int r = 0;
    bool non_manifold = false;
    bool full = true;  // every coset of every face is present

    std::vector<FaceInfo> faces;                  // graded by |sigma|, lex within grade
    std::vector<std::vector<Cell>> cells;         // [q] -> cells of dimension q
    std::vector<Gf2Matrix> boundary;              // [q]: rows = q-cells, cols = (q-1)-cells

    std::size_t cell_count() const {
        std::size_t total = 0;
        for (const auto& cs : cells) total += cs.size();
        return total;
    }

    int face_size(std::uint32_t f) const { return static_cast<int>(faces[f].sigma.size()); }

    // Index of the cell (face, rep mod G_face) in its dimension. A cell's
    // dimension is n - |sigma| regardless of the complex's top dimension
    // (facial subcomplexes lower the top without regrading cells).
    std::uint32_t cell_index(std::uint32_t face, BitVector rep) const {
        const FaceInfo& fi = faces[face];
        if (full)
            return static_cast<std::uint32_t>(fi.offset + fi.subgroup.coset_index(rep));
        const auto& m = lookup_[static_cast<std::size_t>(polytope->n - face_size(face))];
        auto it = m.find({face, fi.subgroup.coset_rep(rep).word()});
        if (it == m.end()) throw Error("cell not present in subcomplex");
        return it->second;
    }

    void build_lookup() {
        lookup_.assign(cells.size(), {});
        for (std::size_t q = 0; q < cells.size(); ++q)
            for (std::size_t i = 0; i < cells[q].size(); ++i)
                lookup_[q].emplace(std::pair{cells[q][i].face, cells[q][i].rep.word()},
                                   static_cast<std::uint32_t>(i));
    }

private:
    std::vector<std::map<std::pair<std::uint32_t, std::uint64_t>, std::uint32_t>> lookup_;
};

namespace detail {

inline void check_boundary_squares_to_zero(const QuotientCellComplex& cx) {
    for (int q = 2; q <= cx.dim; ++q) {
        const Gf2Matrix& bq = cx.boundary[static_cast<std::size_t>(q)];
        const Gf2Matrix& bq1 = cx.boundary[static_cast<std::size_t>(q - 1)];
        std::vector<std::uint64_t> acc(bq1.words_per_row(), 0);
        for (std::size_t row = 0; row < bq.rows(); ++row) {
            std::fill(acc.begin(), acc.end(), 0);
            const std::uint64_t* w = bq.row_words(row);
            for (std::size_t wk = 0; wk < bq.words_per_row(); ++wk) {
                std::uint64_t word = w[wk];
                while (word) {
                    int b = std::countr_zero(word);
                    word &= word - 1;
                    const std::uint64_t* src = bq1.row_words(wk * 64 + static_cast<std::size_t>(b));
                    for (std::size_t t = 0; t < acc.size(); ++t) acc[t] ^= src[t];
                }
            }
            for (std::uint64_t a : acc)
                if (a) throw InternalError("boundary does not square to zero");
        }
    }
}

}  // namespace detail

inline constexpr std::size_t kMaxCellsPerDim = std::size_t{1} << 26;

inline QuotientCellComplex build_complex(const Coloring& c, unsigned threads = 1) {
    QuotientCellComplex cx;
    cx.polytope = c.polytope;
    cx.coloring = c;
    const SimplePolytope& p = *c.polytope;
    cx.dim = p.n;
    cx.r = c.r;
    cx.non_manifold = first_dependent_vertex(c).has_value();

    auto graded = glueback::faces(p);
    std::unordered_map<std::uint64_t, std::uint32_t> face_id;
    for (int s = 0; s <= p.n; ++s)
        for (const Face& f : graded[static_cast<std::size_t>(s)]) {
            QuotientCellComplex::FaceInfo fi;
            fi.sigma = f.sigma;
            fi.subgroup = c.face_subgroup(f.sigma);
            face_id.emplace(detail::face_mask(f.sigma),
                            static_cast<std::uint32_t>(cx.faces.size()));
            cx.faces.push_back(std::move(fi));
        }

    for (auto& fi : cx.faces) {
        std::uint64_t mask = detail::face_mask(fi.sigma);
        for (int j = 1; j <= p.d; ++j) {
            std::uint64_t jm = std::uint64_t{1} << (j - 1);
            if (mask & jm) continue;
            auto it = face_id.find(mask | jm);
            if (it != face_id.end()) fi.up.push_back(it->second);
        }
        // smallest vertex containing sigma, for component labeling
        for (std::uint32_t v = 0; v < cx.faces.size(); ++v) {
            const auto& cand = cx.faces[v].sigma;
            if (static_cast<int>(cand.size()) != p.n) continue;
            if ((detail::face_mask(cand) & mask) == mask) {
                fi.vertex_face = v;
                break;
            }
        }
    }

    // cells, dimension-major
    cx.cells.assign(static_cast<std::size_t>(p.n) + 1, {});
    for (std::uint32_t f = 0; f < cx.faces.size(); ++f) {
        auto& fi = cx.faces[f];
        int q = p.n - static_cast<int>(fi.sigma.size());
        auto& dimcells = cx.cells[static_cast<std::size_t>(q)];
        fi.offset = dimcells.size();
        std::uint64_t count = fi.subgroup.coset_count();
        if (dimcells.size() + count > kMaxCellsPerDim)
            throw Error("complex too large: more than 2^26 cells in one dimension");
        for (std::uint64_t i = 0; i < count; ++i)
            dimcells.push_back(Cell{f, fi.subgroup.rep_of_index(i)});
    }

    // boundary matrices
    cx.boundary.resize(static_cast<std::size_t>(p.n) + 1);
    for (int q = 1; q <= p.n; ++q) {
        auto& rows = cx.cells[static_cast<std::size_t>(q)];
        auto& cols = cx.cells[static_cast<std::size_t>(q - 1)];
        Gf2Matrix b(rows.size(), cols.size());
        parallel_for(rows.size(), threads, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                const Cell& cell = rows[i];
                for (std::uint32_t upf : cx.faces[cell.face].up) {
                    const auto& target = cx.faces[upf];
                    std::uint64_t idx = target.subgroup.coset_index(cell.rep);
                    b.set(i, target.offset + idx);
                }
            }
        });
        cx.boundary[static_cast<std::size_t>(q)] = std::move(b);
    }

    detail::check_boundary_squares_to_zero(cx);
    return cx;
}

inline BettiReport betti(const QuotientCellComplex& cx, unsigned threads = 1) {
    BettiReport rep;
    rep.cells_per_dim.resize(static_cast<std::size_t>(cx.dim) + 1);
    for (int q = 0; q <= cx.dim; ++q)
        rep.cells_per_dim[static_cast<std::size_t>(q)] = cx.cells[static_cast<std::size_t>(q)].size();

    std::vector<std::size_t> ranks(static_cast<std::size_t>(cx.dim) + 2, 0);
    for (int q = 1; q <= cx.dim; ++q)
        ranks[static_cast<std::size_t>(q)] = rank(cx.boundary[static_cast<std::size_t>(q)], threads);

    rep.betti.resize(static_cast<std::size_t>(cx.dim) + 1);
    for (int q = 0; q <= cx.dim; ++q) {
        std::size_t cq = rep.cells_per_dim[static_cast<std::size_t>(q)];
        std::size_t used = ranks[static_cast<std::size_t>(q)] + ranks[static_cast<std::size_t>(q) + 1];
        if (used > cq) throw InternalError("rank bookkeeping exceeded chain dimension");
        rep.betti[static_cast<std::size_t>(q)] = cq - used;
    }
    rep.hrk = 0;
    rep.euler = 0;
    for (int q = 0; q <= cx.dim; ++q) {
        rep.hrk += rep.betti[static_cast<std::size_t>(q)];
        long long sign = (q % 2 == 0) ? 1 : -1;
        rep.euler += sign * static_cast<long long>(rep.cells_per_dim[static_cast<std::size_t>(q)]);
    }
    rep.components = rep.betti[0];
    return rep;
}

struct ComponentInfo {
    std::size_t count = 0;
    std::vector<std::vector<std::uint32_t>> cell_component;  // [q][cell] -> component id
};

// Connected components via union-find over the 1-skeleton; component ids
// are ordered by the smallest 0-cell they contain. Every higher cell is
// labeled through a vertex cell in its closure.
inline ComponentInfo components(const QuotientCellComplex& cx) {
    const auto& verts = cx.cells[0];
    std::vector<std::uint32_t> parent(verts.size());
    for (std::uint32_t i = 0; i < verts.size(); ++i) parent[i] = i;
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    if (cx.dim >= 1) {
        const Gf2Matrix& b1 = cx.boundary[1];
        for (std::size_t row = 0; row < b1.rows(); ++row) {
            const std::uint64_t* w = b1.row_words(row);
            std::uint32_t first = UINT32_MAX;
            for (std::size_t wk = 0; wk < b1.words_per_row(); ++wk) {
                std::uint64_t word = w[wk];
                while (word) {
                    int b = std::countr_zero(word);
                    word &= word - 1;
                    std::uint32_t v = static_cast<std::uint32_t>(wk * 64 + static_cast<std::size_t>(b));
                    if (first == UINT32_MAX)
                        first = v;
                    else
                        parent[find(first)] = find(v);
                }
            }
        }
    }

    ComponentInfo info;
    std::unordered_map<std::uint32_t, std::uint32_t> comp_of_root;
    std::vector<std::uint32_t> vert_comp(verts.size());
    for (std::uint32_t i = 0; i < verts.size(); ++i) {
        std::uint32_t root = find(i);
        auto [it, inserted] =
            comp_of_root.emplace(root, static_cast<std::uint32_t>(comp_of_root.size()));
        vert_comp[i] = it->second;
    }
    info.count = comp_of_root.size();

    info.cell_component.resize(cx.cells.size());
    info.cell_component[0] = vert_comp;
    for (int q = 1; q <= cx.dim; ++q) {
        auto& labels = info.cell_component[static_cast<std::size_t>(q)];
        labels.resize(cx.cells[static_cast<std::size_t>(q)].size());
        for (std::size_t i = 0; i < labels.size(); ++i) {
            const Cell& cell = cx.cells[static_cast<std::size_t>(q)][i];
            std::uint32_t vf = cx.faces[cell.face].vertex_face;
            BitVector vrep = cx.faces[vf].subgroup.coset_rep(cell.rep);
            labels[i] = vert_comp[cx.cell_index(vf, vrep)];
        }
    }
    return info;
}

namespace detail {

// Keep the selected cells, remap ids, and slice the boundary matrices.
// keep[q][i] says whether q-cell i stays; every boundary cell of a kept
// cell must stay as well.
inline QuotientCellComplex subcomplex(const QuotientCellComplex& cx,
                                      const std::vector<std::vector<char>>& keep,
                                      int new_dim) {
    QuotientCellComplex sub;
    sub.polytope = cx.polytope;
    sub.coloring = cx.coloring;
    sub.dim = new_dim;
    sub.r = cx.r;
    sub.non_manifold = cx.non_manifold;
    sub.full = false;
    sub.faces = cx.faces;

    std::vector<std::vector<std::uint32_t>> remap(cx.cells.size());
    sub.cells.assign(static_cast<std::size_t>(new_dim) + 1, {});
    for (std::size_t q = 0; q < cx.cells.size(); ++q) {
        remap[q].assign(cx.cells[q].size(), UINT32_MAX);
        if (q > static_cast<std::size_t>(new_dim)) {
            for (std::size_t i = 0; i < cx.cells[q].size(); ++i)
                if (keep[q][i]) throw InternalError("subcomplex keeps a cell above its dimension");
            continue;
        }
        for (std::size_t i = 0; i < cx.cells[q].size(); ++i) {
            if (!keep[q][i]) continue;
            remap[q][i] = static_cast<std::uint32_t>(sub.cells[q].size());
            sub.cells[q].push_back(cx.cells[q][i]);
        }
    }

    sub.boundary.resize(static_cast<std::size_t>(new_dim) + 1);
    for (int q = 1; q <= new_dim; ++q) {
        const Gf2Matrix& old = cx.boundary[static_cast<std::size_t>(q)];
        Gf2Matrix b(sub.cells[static_cast<std::size_t>(q)].size(),
                    sub.cells[static_cast<std::size_t>(q - 1)].size());
        std::size_t new_row = 0;
        for (std::size_t row = 0; row < old.rows(); ++row) {
            if (!keep[static_cast<std::size_t>(q)][row]) continue;
            const std::uint64_t* w = old.row_words(row);
            for (std::size_t wk = 0; wk < old.words_per_row(); ++wk) {
                std::uint64_t word = w[wk];
                while (word) {
                    int bit = std::countr_zero(word);
                    word &= word - 1;
                    std::uint32_t col =
                        remap[static_cast<std::size_t>(q - 1)][wk * 64 + static_cast<std::size_t>(bit)];
                    if (col == UINT32_MAX)
                        throw InternalError("subcomplex boundary leaves the cell set");
                    b.set(new_row, col);
                }
            }
            ++new_row;
        }
        sub.boundary[static_cast<std::size_t>(q)] = std::move(b);
    }
    sub.build_lookup();
    return sub;
}

}  // namespace detail

inline QuotientCellComplex restrict_to_component(const QuotientCellComplex& cx,
                                                 const ComponentInfo& info,
                                                 std::uint32_t component) {
    if (component >= info.count)
        throw Error("unknown component id " + std::to_string(component));
    std::vector<std::vector<char>> keep(cx.cells.size());
    for (std::size_t q = 0; q < cx.cells.size(); ++q) {
        keep[q].resize(cx.cells[q].size());
        for (std::size_t i = 0; i < cx.cells[q].size(); ++i)
            keep[q][i] = info.cell_component[q][i] == component;
    }
    return detail::subcomplex(cx, keep, cx.dim);
}

// Cells over the facial submanifold pi^{-1}(F_j): all cells whose face
// contains facet j, regraded to top dimension n-1.
inline QuotientCellComplex facial_subcomplex(const QuotientCellComplex& cx, int facet) {
    if (facet < 1 || facet > cx.polytope->d)
        throw Error("facet index " + std::to_string(facet) + " out of range");
    std::vector<std::vector<char>> keep(cx.cells.size());
    for (std::size_t q = 0; q < cx.cells.size(); ++q) {
        keep[q].resize(cx.cells[q].size());
        for (std::size_t i = 0; i < cx.cells[q].size(); ++i) {
            const auto& sigma = cx.faces[cx.cells[q][i].face].sigma;
            keep[q][i] = std::find(sigma.begin(), sigma.end(), facet) != sigma.end();
        }
    }
    return detail::subcomplex(cx, keep, cx.dim - 1);
}

// The cell permutation of the translation (sigma, C) -> (sigma, C + g).
// An involution commuting with the boundary.
inline std::vector<std::vector<std::uint32_t>> translate_action(const QuotientCellComplex& cx,
                                                                BitVector g) {
    if (g.width() != cx.r)
        throw WidthMismatch("translate_action: width " + std::to_string(g.width()) + " != r=" +
                            std::to_string(cx.r));
    std::vector<std::vector<std::uint32_t>> perm(cx.cells.size());
    for (std::size_t q = 0; q < cx.cells.size(); ++q) {
        perm[q].resize(cx.cells[q].size());
        for (std::size_t i = 0; i < cx.cells[q].size(); ++i) {
            const Cell& cell = cx.cells[q][i];
            perm[q][i] = cx.cell_index(cell.face, cell.rep + g);
        }
    }
    return perm;
}

inline bool action_commutes_with_boundary(const QuotientCellComplex& cx,
                                          const std::vector<std::vector<std::uint32_t>>& perm) {
    for (int q = 1; q <= cx.dim; ++q) {
        const Gf2Matrix& b = cx.boundary[static_cast<std::size_t>(q)];
        for (std::size_t row = 0; row < b.rows(); ++row) {
            std::vector<std::uint32_t> mapped, direct;
            const std::uint64_t* w = b.row_words(row);
            for (std::size_t wk = 0; wk < b.words_per_row(); ++wk) {
                std::uint64_t word = w[wk];
                while (word) {
                    int bit = std::countr_zero(word);
                    word &= word - 1;
                    mapped.push_back(perm[static_cast<std::size_t>(q - 1)]
                                         [wk * 64 + static_cast<std::size_t>(bit)]);
                }
            }
            std::size_t prow = perm[static_cast<std::size_t>(q)][row];
            const std::uint64_t* pw = b.row_words(prow);
            for (std::size_t wk = 0; wk < b.words_per_row(); ++wk) {
                std::uint64_t word = pw[wk];
                while (word) {
                    int bit = std::countr_zero(word);
                    word &= word - 1;
                    direct.push_back(static_cast<std::uint32_t>(wk * 64 + static_cast<std::size_t>(bit)));
                }
            }
            std::sort(mapped.begin(), mapped.end());
            if (mapped != direct) return false;
        }
    }
    return true;
}

// True iff (sigma, C) -> (sigma, phi C mod G'_sigma) is a well-defined cell
// bijection intertwining the boundaries exactly. Both complexes must be
// full builds over the same polytope; phi maps cx1's group to cx2's.
inline bool complexes_identical(const QuotientCellComplex& cx1, const QuotientCellComplex& cx2,
                                const Gf2Matrix& phi) {
    if (cx1.dim != cx2.dim) throw Error("complexes_identical: dimension mismatch");
    if (!cx1.full || !cx2.full)
        throw Error("complexes_identical requires fully built complexes");
    if (static_cast<int>(phi.cols()) != cx1.r || static_cast<int>(phi.rows()) != cx2.r)
        throw WidthMismatch("complexes_identical: phi shape does not match group widths");
    if (cx1.faces.size() != cx2.faces.size()) return false;
    for (std::size_t f = 0; f < cx1.faces.size(); ++f)
        if (cx1.faces[f].sigma != cx2.faces[f].sigma) return false;

    std::vector<std::vector<std::uint32_t>> map(cx1.cells.size());
    for (std::size_t q = 0; q < cx1.cells.size(); ++q) {
        if (cx1.cells[q].size() != cx2.cells[q].size()) return false;
        map[q].resize(cx1.cells[q].size());
        std::vector<char> seen(cx2.cells[q].size(), 0);
        for (std::size_t i = 0; i < cx1.cells[q].size(); ++i) {
            const Cell& cell = cx1.cells[q][i];
            BitVector img = phi.apply(cell.rep);
            std::uint32_t j = cx2.cell_index(cell.face, img);
            if (seen[j]) return false;  // not injective: phi(G_sigma) too small
            seen[j] = 1;
            map[q][i] = j;
        }
    }

    for (int q = 1; q <= cx1.dim; ++q) {
        const Gf2Matrix& b1 = cx1.boundary[static_cast<std::size_t>(q)];
        const Gf2Matrix& b2 = cx2.boundary[static_cast<std::size_t>(q)];
        for (std::size_t row = 0; row < b1.rows(); ++row) {
            std::vector<std::uint32_t> mapped, direct;
            const std::uint64_t* w = b1.row_words(row);
            for (std::size_t wk = 0; wk < b1.words_per_row(); ++wk) {
                std::uint64_t word = w[wk];
                while (word) {
                    int bit = std::countr_zero(word);
                    word &= word - 1;
                    mapped.push_back(map[static_cast<std::size_t>(q - 1)]
                                         [wk * 64 + static_cast<std::size_t>(bit)]);
                }
            }
            const std::uint64_t* pw = b2.row_words(map[static_cast<std::size_t>(q)][row]);
            for (std::size_t wk = 0; wk < b2.words_per_row(); ++wk) {
                std::uint64_t word = pw[wk];
                while (word) {
                    int bit = std::countr_zero(word);
                    word &= word - 1;
                    direct.push_back(static_cast<std::uint32_t>(wk * 64 + static_cast<std::size_t>(bit)));
                }
            }
            std::sort(mapped.begin(), mapped.end());
            if (mapped != direct) return false;
        }
    }
    return true;
}

}  // namespace glueback
