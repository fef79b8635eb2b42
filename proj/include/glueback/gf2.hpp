// gf2.hpp -- bit-packed linear algebra over the two-element field.
//
// BitVector   : an element of (Z_2)^r with r <= 64, packed in one word.
//               Coordinate i (0-based) is bit i; bit strings are written
//               leftmost-first, so "110" has coordinates 0 and 1 set.
// Gf2Matrix   : dense row-major bit matrix, arbitrary column count.
// Subspace    : subspace of (Z_2)^r kept in reduced row-echelon form;
//               canonical coset representatives clear the pivot bits.
//
// Everything here is a value type, immutable in practice after
// construction; rank() works on a private copy.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace glueback {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct WidthMismatch : Error {
    explicit WidthMismatch(const std::string& msg) : Error(msg) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

struct InternalError : Error {
    explicit InternalError(const std::string& msg) : Error(msg) {}
};

inline constexpr int kMaxWidth = 64;

class BitVector {
public:
    BitVector() = default;

    explicit BitVector(int width, std::uint64_t bits = 0) : width_(width) {
        if (width < 0 || width > kMaxWidth)
            throw WidthMismatch("BitVector width " + std::to_string(width) +
                                " out of range [0," + std::to_string(kMaxWidth) + "]");
        bits_ = bits & mask(width);
    }

    static BitVector unit(int width, int pos) {
        BitVector v(width);
        v.set_bit(pos);
        return v;
    }

    // "0101": leftmost character is coordinate 0.
    static BitVector parse(std::string_view s) {
        BitVector v(static_cast<int>(s.size()));
        for (int i = 0; i < static_cast<int>(s.size()); ++i) {
            if (s[i] == '1')
                v.set_bit(i);
            else if (s[i] != '0')
                throw ValidationError("bit string must contain only 0/1, got '" +
                                      std::string(s) + "'");
        }
        return v;
    }

    int width() const { return width_; }
    std::uint64_t word() const { return bits_; }
    bool zero() const { return bits_ == 0; }

    bool bit(int pos) const {
        check_pos(pos);
        return (bits_ >> pos) & 1u;
    }

    BitVector& set_bit(int pos, bool value = true) {
        check_pos(pos);
        if (value)
            bits_ |= std::uint64_t{1} << pos;
        else
            bits_ &= ~(std::uint64_t{1} << pos);
        return *this;
    }

    BitVector operator+(BitVector o) const {
        check_width(o);
        return BitVector(width_, bits_ ^ o.bits_);
    }

    BitVector& operator+=(BitVector o) {
        check_width(o);
        bits_ ^= o.bits_;
        return *this;
    }

    friend bool operator==(BitVector a, BitVector b) {
        return a.width_ == b.width_ && a.bits_ == b.bits_;
    }
    friend bool operator!=(BitVector a, BitVector b) { return !(a == b); }
    friend bool operator<(BitVector a, BitVector b) {
        if (a.width_ != b.width_) return a.width_ < b.width_;
        return a.bits_ < b.bits_;
    }

    std::string str() const {
        std::string s(static_cast<std::size_t>(width_), '0');
        for (int i = 0; i < width_; ++i)
            if (bit(i)) s[static_cast<std::size_t>(i)] = '1';
        return s;
    }

    // Block composition: low occupies coordinates [0,low.width).
    static BitVector concat(BitVector low, BitVector high) {
        int w = low.width() + high.width();
        if (w > kMaxWidth) throw WidthMismatch("concat width exceeds 64");
        return BitVector(w, low.word() | (high.word() << low.width()));
    }

    BitVector slice(int from, int len) const {
        if (from < 0 || len < 0 || from + len > width_)
            throw WidthMismatch("slice out of range");
        return BitVector(len, bits_ >> from);
    }

private:
    static std::uint64_t mask(int width) {
        return width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
    }
    void check_pos(int pos) const {
        if (pos < 0 || pos >= width_)
            throw WidthMismatch("bit index " + std::to_string(pos) +
                                " out of range for width " + std::to_string(width_));
    }
    void check_width(BitVector o) const {
        if (width_ != o.width_)
            throw WidthMismatch("width mismatch: " + std::to_string(width_) + " vs " +
                                std::to_string(o.width_));
    }

    std::uint64_t bits_ = 0;
    int width_ = 0;
};

// Splits [0,total) into contiguous chunks, one per worker. threads <= 1 runs
// inline; results must not depend on the partition.
template <class F>
void parallel_for(std::size_t total, unsigned threads, F&& body) {
    if (total == 0) return;
    if (threads <= 1 || total < 2) {
        body(std::size_t{0}, total);
        return;
    }
    unsigned n = std::min<std::size_t>(threads, total);
    std::size_t chunk = (total + n - 1) / n;
    std::vector<std::thread> pool;
    pool.reserve(n - 1);
    for (unsigned t = 1; t < n; ++t) {
        std::size_t b = t * chunk, e = std::min(total, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&body, b, e] { body(b, e); });
    }
    body(std::size_t{0}, std::min(total, chunk));
    for (auto& th : pool) th.join();
}

class Gf2Matrix {
public:
    Gf2Matrix() = default;

    Gf2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), w_(rows * wpr_, 0) {}

    static Gf2Matrix identity(std::size_t n) {
        Gf2Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i);
        return m;
    }

    static Gf2Matrix from_rows(const std::vector<BitVector>& rows, int cols) {
        Gf2Matrix m(rows.size(), static_cast<std::size_t>(cols));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].width() != cols)
                throw WidthMismatch("from_rows: row width " + std::to_string(rows[i].width()) +
                                    " != " + std::to_string(cols));
            if (m.wpr_ > 0) m.w_[i * m.wpr_] = rows[i].word();
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool get(std::size_t r, std::size_t c) const {
        return (w_[r * wpr_ + c / 64] >> (c % 64)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v = true) {
        std::uint64_t bitm = std::uint64_t{1} << (c % 64);
        if (v)
            w_[r * wpr_ + c / 64] |= bitm;
        else
            w_[r * wpr_ + c / 64] &= ~bitm;
    }

    std::uint64_t* row_words(std::size_t r) { return w_.data() + r * wpr_; }
    const std::uint64_t* row_words(std::size_t r) const { return w_.data() + r * wpr_; }

    void xor_row_into(std::size_t src, std::size_t dst) {
        const std::uint64_t* s = row_words(src);
        std::uint64_t* d = row_words(dst);
        for (std::size_t k = 0; k < wpr_; ++k) d[k] ^= s[k];
    }

    // Matrix-vector product; v.width == cols, result width == rows (<= 64).
    BitVector apply(BitVector v) const {
        if (static_cast<std::size_t>(v.width()) != cols_)
            throw WidthMismatch("apply: vector width " + std::to_string(v.width()) +
                                " != cols " + std::to_string(cols_));
        if (rows_ > kMaxWidth) throw WidthMismatch("apply: too many rows for BitVector");
        BitVector out(static_cast<int>(rows_));
        for (std::size_t r = 0; r < rows_; ++r) {
            std::uint64_t acc = wpr_ ? (w_[r * wpr_] & v.word()) : 0;
            if (std::popcount(acc) & 1) out.set_bit(static_cast<int>(r));
        }
        return out;
    }

    Gf2Matrix transposed() const {
        Gf2Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            const std::uint64_t* row = row_words(r);
            for (std::size_t wk = 0; wk < wpr_; ++wk) {
                std::uint64_t w = row[wk];
                while (w) {
                    int b = std::countr_zero(w);
                    w &= w - 1;
                    t.set(wk * 64 + static_cast<std::size_t>(b), r);
                }
            }
        }
        return t;
    }

    Gf2Matrix operator*(const Gf2Matrix& o) const {
        if (cols_ != o.rows_)
            throw WidthMismatch("matrix product shape mismatch");
        Gf2Matrix out(rows_, o.cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            std::uint64_t* dst = out.row_words(r);
            const std::uint64_t* row = row_words(r);
            for (std::size_t wk = 0; wk < wpr_; ++wk) {
                std::uint64_t w = row[wk];
                while (w) {
                    int b = std::countr_zero(w);
                    w &= w - 1;
                    const std::uint64_t* src = o.row_words(wk * 64 + static_cast<std::size_t>(b));
                    for (std::size_t k = 0; k < out.wpr_; ++k) dst[k] ^= src[k];
                }
            }
        }
        return out;
    }

    friend bool operator==(const Gf2Matrix& a, const Gf2Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.w_ == b.w_;
    }

    static Gf2Matrix block_diagonal(const Gf2Matrix& a, const Gf2Matrix& b) {
        Gf2Matrix out(a.rows_ + b.rows_, a.cols_ + b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r)
            for (std::size_t c = 0; c < a.cols_; ++c)
                if (a.get(r, c)) out.set(r, c);
        for (std::size_t r = 0; r < b.rows_; ++r)
            for (std::size_t c = 0; c < b.cols_; ++c)
                if (b.get(r, c)) out.set(a.rows_ + r, a.cols_ + c);
        return out;
    }

    // Square inverse by Gauss-Jordan; nullopt when singular.
    std::optional<Gf2Matrix> inverse() const {
        if (rows_ != cols_) throw WidthMismatch("inverse of non-square matrix");
        Gf2Matrix a(*this);
        Gf2Matrix inv = identity(rows_);
        for (std::size_t c = 0; c < cols_; ++c) {
            std::size_t p = c;
            while (p < rows_ && !a.get(p, c)) ++p;
            if (p == rows_) return std::nullopt;
            if (p != c) {
                for (std::size_t k = 0; k < a.wpr_; ++k)
                    std::swap(a.row_words(p)[k], a.row_words(c)[k]);
                for (std::size_t k = 0; k < inv.wpr_; ++k)
                    std::swap(inv.row_words(p)[k], inv.row_words(c)[k]);
            }
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r != c && a.get(r, c)) {
                    a.xor_row_into(c, r);
                    inv.xor_row_into(c, r);
                }
            }
        }
        return inv;
    }

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> w_;

    friend std::size_t rank_destructive(Gf2Matrix&, unsigned);
};

// GF(2) row rank. Blocked elimination: pivots are collected per 64-column
// block, remaining rows are reduced against precomputed xor tables of
// 8-pivot groups (one table lookup instead of up to 8 row xors). Row
// reduction within a block is schedule-independent, so the result does not
// depend on the thread count.
inline std::size_t rank_destructive(Gf2Matrix& m, unsigned threads = 1) {
    const std::size_t rows = m.rows(), wpr = m.words_per_row();
    if (rows == 0 || m.cols() == 0) return 0;

    std::vector<std::uint64_t*> act;
    act.reserve(rows);
    for (std::size_t r = 0; r < rows; ++r) act.push_back(m.row_words(r));

    struct Pivot {
        std::uint64_t* row;
        std::uint64_t blockword;  // row word in the current block at collection time
        int bit;                  // leading bit inside the block
    };

    std::size_t rank = 0;
    std::vector<Pivot> piv;
    std::vector<char> is_piv;
    std::vector<std::uint64_t> tables;

    for (std::size_t blk = 0; blk < wpr && !act.empty(); ++blk) {
        piv.clear();
        is_piv.assign(act.size(), 0);
        const std::size_t suf = wpr - blk;

        // Pivot collection: cheap scalar simulation on the block word; a row
        // that survives reduction becomes a pivot and is fully reduced.
        for (std::size_t i = 0; i < act.size() && piv.size() < 64; ++i) {
            std::uint64_t w = act[i][blk];
            for (const Pivot& p : piv)
                if ((w >> p.bit) & 1) w ^= p.blockword;
            if (w == 0) continue;
            std::uint64_t* row = act[i];
            for (const Pivot& p : piv)
                if ((row[blk] >> p.bit) & 1)
                    for (std::size_t k = 0; k < suf; ++k) row[blk + k] ^= p.row[blk + k];
            piv.push_back(Pivot{row, row[blk], std::countr_zero(row[blk])});
            is_piv[i] = 1;
        }

        if (!piv.empty()) {
            // Gray-style xor tables over groups of up to 8 pivots; entry
            // covers words [blk, wpr).
            const std::size_t ngroups = (piv.size() + 7) / 8;
            tables.assign(ngroups * 256 * suf, 0);
            for (std::size_t g = 0; g < ngroups; ++g) {
                std::uint64_t* tab = tables.data() + g * 256 * suf;
                const std::size_t base = g * 8;
                const std::size_t gsz = std::min<std::size_t>(8, piv.size() - base);
                for (std::uint64_t msk = 1; msk < (std::uint64_t{1} << gsz); ++msk) {
                    int t = std::countr_zero(msk);
                    const std::uint64_t* prev = tab + (msk ^ (std::uint64_t{1} << t)) * suf;
                    const std::uint64_t* prow = piv[base + static_cast<std::size_t>(t)].row + blk;
                    std::uint64_t* dst = tab + msk * suf;
                    for (std::size_t k = 0; k < suf; ++k) dst[k] = prev[k] ^ prow[k];
                }
            }

            // Reduce every non-pivot row; independent per row.
            parallel_for(act.size(), threads, [&](std::size_t lo, std::size_t hi) {
                std::vector<std::uint32_t> sel(ngroups);
                for (std::size_t i = lo; i < hi; ++i) {
                    if (is_piv[i]) continue;
                    std::uint64_t* row = act[i];
                    std::uint64_t w = row[blk];
                    if (w == 0) continue;
                    std::fill(sel.begin(), sel.end(), 0);
                    for (std::size_t j = 0; j < piv.size(); ++j) {
                        if ((w >> piv[j].bit) & 1) {
                            sel[j / 8] |= 1u << (j % 8);
                            w ^= piv[j].blockword;
                        }
                    }
                    for (std::size_t g = 0; g < ngroups; ++g) {
                        if (!sel[g]) continue;
                        const std::uint64_t* src = tables.data() + (g * 256 + sel[g]) * suf;
                        for (std::size_t k = 0; k < suf; ++k) row[blk + k] ^= src[k];
                    }
                }
            });
        }

        rank += piv.size();
        std::size_t keep = 0;
        for (std::size_t i = 0; i < act.size(); ++i)
            if (!is_piv[i]) act[keep++] = act[i];
        act.resize(keep);
    }
    return rank;
}

inline std::size_t rank(const Gf2Matrix& m, unsigned threads = 1) {
    Gf2Matrix copy(m);
    return rank_destructive(copy, threads);
}

// Subspace of (Z_2)^r held as a reduced row-echelon basis. The canonical
// representative of a coset clears every pivot coordinate; the remaining
// free coordinates index cosets lexicographically (lowest free column is
// the least significant index bit).
class Subspace {
public:
    Subspace() = default;

    static Subspace zero(int width) {
        Subspace s;
        s.width_ = check(width);
        return s;
    }

    static Subspace full(int width) {
        Subspace s = zero(width);
        for (int i = 0; i < width; ++i) s.insert(BitVector::unit(width, i));
        return s;
    }

    static Subspace span_of(int width, const std::vector<BitVector>& vecs) {
        Subspace s = zero(width);
        for (const BitVector& v : vecs) {
            if (v.width() != width)
                throw WidthMismatch("span: vector width " + std::to_string(v.width()) +
                                    " != ambient " + std::to_string(width));
            s.insert(v);
        }
        return s;
    }

    int ambient_width() const { return width_; }
    int rank() const { return static_cast<int>(basis_.size()); }
    const std::vector<BitVector>& basis() const { return basis_; }
    const std::vector<int>& pivot_positions() const { return pivots_; }

    BitVector coset_rep(BitVector v) const {
        if (v.width() != width_)
            throw WidthMismatch("coset_rep: width " + std::to_string(v.width()) +
                                " != ambient " + std::to_string(width_));
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (v.bit(pivots_[i])) v += basis_[i];
        return v;
    }

    bool contains(BitVector v) const { return coset_rep(v).zero(); }

    int codim() const { return width_ - rank(); }

    std::uint64_t coset_count() const {
        int c = codim();
        if (c >= 63) throw Error("coset count would overflow");
        return std::uint64_t{1} << c;
    }

    std::uint64_t coset_index(BitVector v) const {
        BitVector rep = coset_rep(v);
        std::uint64_t idx = 0;
        int out = 0;
        for (int c = 0; c < width_; ++c) {
            if (std::binary_search(pivots_.begin(), pivots_.end(), c)) continue;
            if (rep.bit(c)) idx |= std::uint64_t{1} << out;
            ++out;
        }
        return idx;
    }

    BitVector rep_of_index(std::uint64_t idx) const {
        if (idx >= coset_count())
            throw Error("coset index " + std::to_string(idx) + " out of range");
        BitVector rep(width_);
        int out = 0;
        for (int c = 0; c < width_; ++c) {
            if (std::binary_search(pivots_.begin(), pivots_.end(), c)) continue;
            if ((idx >> out) & 1) rep.set_bit(c);
            ++out;
        }
        return rep;
    }

    // All 2^rank elements; element j is the combination selected by the bits
    // of j over the RREF basis (row 0 = least significant). First element 0.
    std::vector<BitVector> enumerate() const {
        if (rank() > 20) throw Error("enumerate: rank " + std::to_string(rank()) + " > 20");
        std::vector<BitVector> out;
        out.reserve(std::size_t{1} << rank());
        for (std::uint64_t j = 0; j < (std::uint64_t{1} << rank()); ++j) {
            BitVector v(width_);
            for (std::size_t t = 0; t < basis_.size(); ++t)
                if ((j >> t) & 1) v += basis_[t];
            out.push_back(v);
        }
        return out;
    }

    // Surjective (r - rank) x r matrix whose kernel is exactly this
    // subspace: reduce, then keep the free coordinates.
    Gf2Matrix quotient_projection() const {
        std::vector<int> free_cols;
        for (int c = 0; c < width_; ++c)
            if (!std::binary_search(pivots_.begin(), pivots_.end(), c)) free_cols.push_back(c);
        Gf2Matrix q(free_cols.size(), static_cast<std::size_t>(width_));
        for (int c = 0; c < width_; ++c) {
            BitVector img = coset_rep(BitVector::unit(width_, c));
            for (std::size_t j = 0; j < free_cols.size(); ++j)
                if (img.bit(free_cols[j])) q.set(j, static_cast<std::size_t>(c));
        }
        return q;
    }

    Subspace sum(const Subspace& o) const {
        if (width_ != o.width_) throw WidthMismatch("subspace sum: ambient mismatch");
        Subspace s(*this);
        for (const BitVector& v : o.basis_) s.insert(v);
        return s;
    }

    bool intersection_trivial(const Subspace& o) const {
        return sum(o).rank() == rank() + o.rank();
    }

    // Span of the images of the basis under phi (phi.cols == ambient).
    Subspace image(const Gf2Matrix& phi) const {
        Subspace s = zero(static_cast<int>(phi.rows()));
        for (const BitVector& v : basis_) s.insert(phi.apply(v));
        return s;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.width_ == b.width_ && a.basis_ == b.basis_;
    }

    void insert(BitVector v) {
        if (v.width() != width_) throw WidthMismatch("insert: width mismatch");
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (v.bit(pivots_[i])) v += basis_[i];
        if (v.zero()) return;
        int p = std::countr_zero(v.word());
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i].bit(p)) basis_[i] += v;
        auto it = std::lower_bound(pivots_.begin(), pivots_.end(), p);
        std::size_t pos = static_cast<std::size_t>(it - pivots_.begin());
        pivots_.insert(it, p);
        basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(pos), v);
    }

private:
    static int check(int width) {
        if (width < 0 || width > kMaxWidth)
            throw WidthMismatch("subspace ambient width out of range");
        return width;
    }

    int width_ = 0;
    std::vector<BitVector> basis_;
    std::vector<int> pivots_;
};

// Linear map phi with phi * a[i] = b[i] for all i, injective on span(a),
// extended deterministically by unit vectors on both sides. Exists iff the
// relation spaces of a and b coincide, i.e. rank(A) == rank(B) == rank(A|B).
inline std::optional<Gf2Matrix> solve_label_isomorphism(const std::vector<BitVector>& a,
                                                        int width_a,
                                                        const std::vector<BitVector>& b,
                                                        int width_b) {
    if (a.size() != b.size())
        throw Error("solve_label_isomorphism: length mismatch " + std::to_string(a.size()) +
                    " vs " + std::to_string(b.size()));

    Gf2Matrix stacked(a.size(), static_cast<std::size_t>(width_a + width_b));
    Subspace sa = Subspace::zero(width_a), sb = Subspace::zero(width_b);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].width() != width_a || b[i].width() != width_b)
            throw WidthMismatch("solve_label_isomorphism: inconsistent widths");
        for (int c = 0; c < width_a; ++c)
            if (a[i].bit(c)) stacked.set(i, static_cast<std::size_t>(c));
        for (int c = 0; c < width_b; ++c)
            if (b[i].bit(c)) stacked.set(i, static_cast<std::size_t>(width_a + c));
        sa.insert(a[i]);
        sb.insert(b[i]);
    }
    std::size_t ra = static_cast<std::size_t>(sa.rank());
    if (ra != static_cast<std::size_t>(sb.rank()) || ra != rank(stacked)) return std::nullopt;

    // Basis pairs from the inputs, then a deterministic unit-vector
    // extension on both sides.
    std::vector<BitVector> u, v;
    Subspace uspan = Subspace::zero(width_a), vspan = Subspace::zero(width_b);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!uspan.contains(a[i])) {
            uspan.insert(a[i]);
            vspan.insert(b[i]);
            u.push_back(a[i]);
            v.push_back(b[i]);
        }
    }
    for (int c = 0; c < width_a; ++c) {
        BitVector e = BitVector::unit(width_a, c);
        if (uspan.contains(e)) continue;
        uspan.insert(e);
        u.push_back(e);
        BitVector partner(width_b);
        for (int cb = 0; cb < width_b; ++cb) {
            BitVector f = BitVector::unit(width_b, cb);
            if (!vspan.contains(f)) {
                partner = f;
                vspan.insert(f);
                break;
            }
        }
        v.push_back(partner);  // zero partner when width_b is exhausted
    }

    Gf2Matrix umat = Gf2Matrix::from_rows(u, width_a);
    Gf2Matrix vmat = Gf2Matrix::from_rows(v, width_b);
    auto uinv = umat.inverse();
    if (!uinv) throw InternalError("basis extension failed to be invertible");
    return ((*uinv) * vmat).transposed();
}

}  // namespace glueback
