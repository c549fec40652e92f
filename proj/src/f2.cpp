#include "larclab/f2.hpp"

#include "larclab/rng.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

namespace larclab {

namespace {

int word_count(int n) { return (n + 63) / 64; }

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument(std::string("bad hex digit: ") + c);
}

}  // namespace

F2Vector::F2Vector(int n) : n_(n), w_(word_count(n), 0) {
    if (n < 0) throw std::invalid_argument("negative dimension");
}

F2Vector F2Vector::from_string(const std::string& bits) {
    F2Vector v(static_cast<int>(bits.size()));
    for (size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1')
            throw std::invalid_argument("bad bit string: " + bits);
        v.set(static_cast<int>(i), bits[i] == '1');
    }
    return v;
}

F2Vector F2Vector::from_index(int n, uint64_t x) {
    if (n > 64) throw std::invalid_argument("from_index requires n <= 64");
    F2Vector v(n);
    if (n > 0) {
        uint64_t mask = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
        v.w_[0] = x & mask;
    }
    return v;
}

F2Vector F2Vector::from_hex(int n, const std::string& hex) {
    F2Vector v(n);
    const int nbytes = (n + 7) / 8;
    if (static_cast<int>(hex.size()) != 2 * nbytes)
        throw std::invalid_argument("hex string has wrong length for n=" + std::to_string(n));
    for (int b = 0; b < nbytes; ++b) {
        int byte = hex_digit(hex[2 * b]) * 16 + hex_digit(hex[2 * b + 1]);
        v.w_[b / 8] |= static_cast<uint64_t>(byte) << (8 * (b % 8));
    }
    for (int i = n; i < 8 * nbytes; ++i) {
        if (v.get(i)) throw std::invalid_argument("hex string sets bits beyond n");
    }
    return v;
}

void F2Vector::set(int i, bool v) {
    if (i < 0 || i >= n_) throw std::out_of_range("bit index out of range");
    uint64_t bit = 1ULL << (i & 63);
    if (v)
        w_[i >> 6] |= bit;
    else
        w_[i >> 6] &= ~bit;
}

bool F2Vector::is_zero() const {
    for (uint64_t w : w_)
        if (w) return false;
    return true;
}

int F2Vector::lowest_set_bit() const {
    for (size_t i = 0; i < w_.size(); ++i)
        if (w_[i]) return static_cast<int>(64 * i) + std::countr_zero(w_[i]);
    return -1;
}

uint64_t F2Vector::to_index() const {
    if (n_ > 64) throw std::invalid_argument("to_index requires n <= 64");
    return w_.empty() ? 0 : w_[0];
}

F2Vector& F2Vector::operator^=(const F2Vector& o) {
    require_same(o);
    for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
}

bool F2Vector::dot(const F2Vector& o) const {
    require_same(o);
    uint64_t acc = 0;
    for (size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
    return std::popcount(acc) & 1;
}

std::string F2Vector::to_string() const {
    std::string s(n_, '0');
    for (int i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

std::string F2Vector::to_hex() const {
    static const char* digits = "0123456789abcdef";
    const int nbytes = (n_ + 7) / 8;
    std::string s;
    s.reserve(2 * nbytes);
    for (int b = 0; b < nbytes; ++b) {
        int byte = static_cast<int>((w_[b / 8] >> (8 * (b % 8))) & 0xff);
        s.push_back(digits[byte >> 4]);
        s.push_back(digits[byte & 15]);
    }
    return s;
}

void F2Vector::require_same(const F2Vector& o) const {
    if (n_ != o.n_)
        throw DimensionMismatchError("ambient dimensions differ: " + std::to_string(n_) +
                                     " vs " + std::to_string(o.n_));
}

F2Matrix::F2Matrix(int n, std::vector<F2Vector> r) : n(n), rows(std::move(r)) {
    for (const auto& row : rows)
        if (row.ambient() != n)
            throw DimensionMismatchError("matrix row has wrong ambient dimension");
}

F2Matrix F2Matrix::from_strings(std::initializer_list<const char*> rows) {
    F2Matrix m;
    for (const char* r : rows) m.rows.push_back(F2Vector::from_string(r));
    m.n = m.rows.empty() ? 0 : m.rows.front().ambient();
    for (const auto& row : m.rows)
        if (row.ambient() != m.n)
            throw DimensionMismatchError("matrix rows have differing lengths");
    return m;
}

RrefResult canonicalize(const F2Matrix& m) {
    for (const auto& row : m.rows)
        if (row.ambient() != m.n)
            throw DimensionMismatchError("matrix row has wrong ambient dimension");
    std::vector<F2Vector> rows = m.rows;
    int rank = 0;
    for (int col = 0; col < m.n && rank < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
            if (rows[r].get(col)) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r != rank && rows[r].get(col)) rows[r] ^= rows[rank];
        }
        ++rank;
    }
    rows.resize(rank, F2Vector(m.n));
    return RrefResult{F2Matrix(m.n, std::move(rows)), rank};
}

Subspace::Subspace(int n) : basis_(n) {
    if (n < 0) throw std::invalid_argument("negative dimension");
}

Subspace Subspace::span(const F2Matrix& generators) {
    Subspace s(generators.n);
    s.basis_ = canonicalize(generators).mat;
    return s;
}

Subspace Subspace::full(int n) {
    F2Matrix id(n);
    for (int i = 0; i < n; ++i) {
        F2Vector e(n);
        e.set(i, true);
        id.rows.push_back(e);
    }
    Subspace s(n);
    s.basis_ = std::move(id);
    return s;
}

F2Vector Subspace::reduce(F2Vector x) const {
    if (x.ambient() != ambient())
        throw DimensionMismatchError("vector/subspace dimension mismatch");
    for (const auto& row : basis_.rows) {
        int p = row.lowest_set_bit();
        if (x.get(p)) x ^= row;
    }
    return x;
}

void Subspace::for_each(const std::function<void(const F2Vector&)>& fn, int cap_dim) const {
    if (dim() > cap_dim)
        throw EnumerationCapError("enumeration refused: dim " + std::to_string(dim()) +
                                  " exceeds cap " + std::to_string(cap_dim) +
                                  "; raise the cap to at least " + std::to_string(dim()));
    const uint64_t count = 1ULL << dim();
    // Gray-code walk: one basis XOR per step.
    F2Vector cur(ambient());
    fn(cur);
    for (uint64_t i = 1; i < count; ++i) {
        cur ^= basis_.rows[std::countr_zero(i)];
        fn(cur);
    }
}

std::vector<F2Vector> Subspace::elements(int cap_dim) const {
    std::vector<F2Vector> out;
    if (dim() <= cap_dim) out.reserve(1ULL << dim());
    for_each([&](const F2Vector& v) { out.push_back(v); }, cap_dim);
    return out;
}

Subspace dual_space(const Subspace& s) {
    const int n = s.ambient();
    const auto& basis = s.basis().rows;
    std::vector<int> pivots;
    pivots.reserve(basis.size());
    for (const auto& row : basis) pivots.push_back(row.lowest_set_bit());

    std::vector<bool> is_pivot(n, false);
    for (int p : pivots) is_pivot[p] = true;

    F2Matrix kernel(n);
    for (int j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        F2Vector v(n);
        v.set(j, true);
        for (size_t i = 0; i < basis.size(); ++i)
            if (basis[i].get(j)) v.set(pivots[i], true);
        kernel.rows.push_back(std::move(v));
    }
    return Subspace::span(kernel);
}

Subspace sum(const Subspace& s, const Subspace& t) {
    if (s.ambient() != t.ambient())
        throw DimensionMismatchError("subspace sum: ambient dimensions differ");
    F2Matrix stacked(s.ambient());
    stacked.rows = s.basis().rows;
    stacked.rows.insert(stacked.rows.end(), t.basis().rows.begin(), t.basis().rows.end());
    return Subspace::span(stacked);
}

Subspace intersect(const Subspace& s, const Subspace& t) {
    // dual(S cap T) = dual(S) + dual(T)
    return dual_space(sum(dual_space(s), dual_space(t)));
}

bool independent(const Subspace& s, const Subspace& t) {
    return intersect(dual_space(s), dual_space(t)).dim() == 0;
}

AffineSubspace::AffineSubspace(Subspace space, const F2Vector& shift)
    : space_(std::move(space)), shift_(space_.reduce(shift)) {}

std::vector<F2Vector> AffineSubspace::elements(int cap_dim) const {
    std::vector<F2Vector> out;
    if (dim() <= cap_dim) out.reserve(1ULL << dim());
    space_.for_each([&](const F2Vector& v) { out.push_back(v ^ shift_); }, cap_dim);
    return out;
}

std::optional<AffineSubspace> affine_intersect(const AffineSubspace& a, const AffineSubspace& b) {
    if (a.ambient() != b.ambient())
        throw DimensionMismatchError("affine intersect: ambient dimensions differ");
    const int n = a.ambient();

    // Stack the constraint systems <l, x> = <l, shift> of both spaces and
    // solve by elimination on the augmented rows.
    struct AugRow {
        F2Vector v;
        bool rhs;
    };
    std::vector<AugRow> rows;
    auto add_constraints = [&](const AffineSubspace& w) {
        Subspace d = dual_space(w.space());
        for (const auto& l : d.basis().rows) rows.push_back({l, l.dot(w.shift())});
    };
    add_constraints(a);
    add_constraints(b);

    int rank = 0;
    std::vector<int> pivot_cols;
    for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r].v.get(col)) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r != rank && rows[r].v.get(col)) {
                rows[r].v ^= rows[rank].v;
                rows[r].rhs = rows[r].rhs != rows[rank].rhs;
            }
        }
        pivot_cols.push_back(col);
        ++rank;
    }
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
        if (rows[r].rhs) return std::nullopt;  // 0 = 1: inconsistent

    // Free variables zero, each pivot variable equal to its row's rhs: after
    // full elimination every row touches only its own pivot column among the
    // pivots, so this assignment satisfies the whole system.
    F2Vector particular(n);
    F2Matrix constraint_span(n);
    for (int r = 0; r < rank; ++r) {
        if (rows[r].rhs) particular.set(pivot_cols[r], true);
        constraint_span.rows.push_back(rows[r].v);
    }
    return AffineSubspace(dual_space(Subspace::span(constraint_span)), particular);
}

DualBasis DualBasis::canonical(const Subspace& s) {
    return DualBasis{s, dual_space(s).basis()};
}

bool DualBasis::valid() const {
    if (lines.n != for_space.ambient()) return false;
    if (lines.row_count() != for_space.codim()) return false;
    for (const auto& l : lines.rows)
        for (const auto& b : for_space.basis().rows)
            if (l.dot(b)) return false;
    return canonicalize(lines).rank == lines.row_count();
}

F2Vector coset_map(const Subspace& s, const DualBasis& l, const F2Vector& x) {
    if (!(l.for_space == s) || !l.valid())
        throw InvalidDualBasisError("basis is not a dual basis of the subspace");
    F2Vector out(s.codim());
    for (int i = 0; i < l.lines.row_count(); ++i) out.set(i, l.lines.rows[i].dot(x));
    return out;
}

uint64_t coset_label(const Subspace& s, const DualBasis& l, const F2Vector& x) {
    return coset_map(s, l, x).to_index();
}

Subspace random_subspace(int n, int d, Rng& rng) {
    if (d < 0 || d > n) throw std::invalid_argument("random_subspace: need 0 <= d <= n");
    F2Matrix picked(n);
    Subspace span_so_far(n);
    while (picked.row_count() < d) {
        F2Vector v(n);
        for (int i = 0; i < n; ++i) v.set(i, rng.next_u64() & 1);
        if (span_so_far.contains(v)) continue;
        picked.rows.push_back(v);
        span_so_far = Subspace::span(picked);
    }
    return span_so_far;
}

IntersectionProbBound trivial_intersection_prob_bound(int n, int d1, int d2) {
    Rational raw = Rational(1) - Rational(n) * pow2_rat(d1 + d2 - n);
    if (raw <= 0) return {Rational(0), true};
    return {raw, false};
}

AvoidanceResult affine_avoidance_check(const AffineSubspace& v, const AffineSubspace& w) {
    if (v.ambient() != w.ambient())
        throw DimensionMismatchError("affine_avoidance_check: ambient dimensions differ");
    const int n = v.ambient();
    auto inter = affine_intersect(v, w);
    BigInt inter_size = inter ? pow2_int(inter->dim()) : BigInt(0);

    Rational frac_of_w = Rational(inter_size, pow2_int(w.dim()));
    Rational v_density = Rational(pow2_int(v.dim()), pow2_int(n));
    if (frac_of_w < v_density) {
        if (inter)
            throw std::logic_error("avoidance dichotomy violated: small but nonempty intersection");
        return {true, Rational(0)};
    }
    return {false, Rational(inter_size, pow2_int(v.dim()))};
}

BigInt gaussian_binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    // prod_{i=0}^{k-1} (2^{n-i} - 1) / (2^{k-i} - 1); exact at every step when
    // numerator factors are accumulated before dividing.
    BigInt num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= pow2_int(n - i) - 1;
        den *= pow2_int(k - i) - 1;
    }
    return num / den;
}

namespace {

// Enumerate RREF matrices with pivot columns fixed to `pivots`; `fn` gets each
// completed basis.
void enumerate_rref_with_pivots(int n, const std::vector<int>& pivots,
                                const std::function<void(const F2Matrix&)>& fn) {
    const int d = static_cast<int>(pivots.size());
    std::vector<bool> is_pivot(n, false);
    for (int p : pivots) is_pivot[p] = true;

    // Free positions: (row i, col c) with c > pivots[i] and c not a pivot.
    std::vector<std::pair<int, int>> free_pos;
    for (int i = 0; i < d; ++i)
        for (int c = pivots[i] + 1; c < n; ++c)
            if (!is_pivot[c]) free_pos.emplace_back(i, c);

    const size_t e = free_pos.size();
    if (e > 30)
        throw EnumerationCapError("subspace enumeration too large (2^" + std::to_string(e) +
                                  " fillings for one pivot set)");
    F2Matrix m(n);
    m.rows.assign(d, F2Vector(n));
    for (uint64_t fill = 0; fill < (1ULL << e); ++fill) {
        for (int i = 0; i < d; ++i) {
            m.rows[i] = F2Vector(n);
            m.rows[i].set(pivots[i], true);
        }
        for (size_t j = 0; j < e; ++j)
            if ((fill >> j) & 1) m.rows[free_pos[j].first].set(free_pos[j].second, true);
        fn(m);
    }
}

}  // namespace

void for_each_subspace(int n, int d, const std::function<void(const Subspace&)>& fn) {
    if (d < 0 || d > n) return;
    if (d == 0) {
        fn(Subspace(n));
        return;
    }
    // Walk pivot column combinations in ascending order.
    std::vector<int> pivots(d);
    for (int i = 0; i < d; ++i) pivots[i] = i;
    for (;;) {
        enumerate_rref_with_pivots(n, pivots, [&](const F2Matrix& m) {
            Subspace s(n);
            s = Subspace::span(m);  // already RREF; span() just revalidates
            fn(s);
        });
        int i = d - 1;
        while (i >= 0 && pivots[i] == n - d + i) --i;
        if (i < 0) break;
        ++pivots[i];
        for (int j = i + 1; j < d; ++j) pivots[j] = pivots[j - 1] + 1;
    }
}

}  // namespace larclab
