#pragma once

#include "larclab/rational.hpp"

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace larclab {

class Rng;

struct DimensionMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EnumerationCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidDualBasisError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline constexpr int kDefaultEnumCapDim = 26;

// Packed vector over GF(2). Coordinate x1 is bit 0 of word 0; all file
// formats and coset labels use this order.
class F2Vector {
public:
    F2Vector() = default;
    explicit F2Vector(int n);

    // "1011" reads x1=1, x2=0, x3=1, x4=1.
    static F2Vector from_string(const std::string& bits);
    // Low n bits of x, x1 = bit 0. Requires n <= 64.
    static F2Vector from_index(int n, uint64_t x);
    static F2Vector from_hex(int n, const std::string& hex);

    int ambient() const { return n_; }
    bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(int i, bool v);
    bool is_zero() const;
    int lowest_set_bit() const;  // -1 when zero
    uint64_t to_index() const;   // requires n <= 64

    F2Vector& operator^=(const F2Vector& o);
    friend F2Vector operator^(F2Vector a, const F2Vector& b) { a ^= b; return a; }
    bool operator==(const F2Vector&) const = default;

    // Standard bilinear form: parity of the AND of the packed words.
    bool dot(const F2Vector& o) const;

    std::string to_string() const;
    // Little-endian bytes, x1 = LSB of first byte.
    std::string to_hex() const;

private:
    void require_same(const F2Vector& o) const;

    int n_ = 0;
    std::vector<uint64_t> w_;
};

struct F2Matrix {
    int n = 0;
    std::vector<F2Vector> rows;

    F2Matrix() = default;
    explicit F2Matrix(int n) : n(n) {}
    F2Matrix(int n, std::vector<F2Vector> rows);
    static F2Matrix from_strings(std::initializer_list<const char*> rows);

    int row_count() const { return static_cast<int>(rows.size()); }
    bool operator==(const F2Matrix&) const = default;
};

struct RrefResult {
    F2Matrix mat;  // RREF, zero rows removed, pivot columns ascending
    int rank = 0;
};

// Unique per row space: idempotent and invariant under row shuffles.
RrefResult canonicalize(const F2Matrix& m);

class Subspace {
public:
    explicit Subspace(int n);  // the zero space {0}
    static Subspace span(const F2Matrix& generators);
    static Subspace full(int n);

    int ambient() const { return basis_.n; }
    int dim() const { return basis_.row_count(); }
    int codim() const { return ambient() - dim(); }
    const F2Matrix& basis() const { return basis_; }

    // Residual of x after elimination by the basis rows; zero iff member.
    F2Vector reduce(F2Vector x) const;
    bool contains(const F2Vector& x) const { return reduce(x).is_zero(); }

    std::vector<F2Vector> elements(int cap_dim = kDefaultEnumCapDim) const;
    void for_each(const std::function<void(const F2Vector&)>& fn,
                  int cap_dim = kDefaultEnumCapDim) const;

    bool operator==(const Subspace&) const = default;

private:
    F2Matrix basis_;  // canonical RREF
};

Subspace dual_space(const Subspace& s);
Subspace sum(const Subspace& s, const Subspace& t);
Subspace intersect(const Subspace& s, const Subspace& t);

// True iff dual(s) and dual(t) meet only at 0; then the coset maps of s and t
// are independent under uniform input.
bool independent(const Subspace& s, const Subspace& t);

class AffineSubspace {
public:
    // Shift is canonicalized to the coset element with zeros in all pivot
    // coordinates of the basis (the lexicographically least coset element,
    // reading coordinates x1, x2, ...).
    AffineSubspace(Subspace space, const F2Vector& shift);

    const Subspace& space() const { return space_; }
    const F2Vector& shift() const { return shift_; }
    int ambient() const { return space_.ambient(); }
    int dim() const { return space_.dim(); }
    int codim() const { return space_.codim(); }

    bool contains(const F2Vector& x) const { return space_.contains(x ^ shift_); }
    std::vector<F2Vector> elements(int cap_dim = kDefaultEnumCapDim) const;

    bool operator==(const AffineSubspace&) const = default;

private:
    Subspace space_;
    F2Vector shift_;
};

// Empty optional when the affine spaces are disjoint.
std::optional<AffineSubspace> affine_intersect(const AffineSubspace& a, const AffineSubspace& b);

struct DualBasis {
    Subspace for_space;
    F2Matrix lines;  // codim(for_space) independent rows, all orthogonal to for_space

    static DualBasis canonical(const Subspace& s);
    bool valid() const;
};

// Bit i of the result is <lines[i], x>. Throws InvalidDualBasisError when L is
// not a dual basis of s.
F2Vector coset_map(const Subspace& s, const DualBasis& l, const F2Vector& x);
// Same with the canonical dual basis, packed as an integer label.
uint64_t coset_label(const Subspace& s, const DualBasis& l, const F2Vector& x);

// Uniform over dimension-d subspaces: d vectors drawn uniformly, each rejected
// while inside the span of the previous ones.
Subspace random_subspace(int n, int d, Rng& rng);

struct IntersectionProbBound {
    Rational bound;  // max(1 - n 2^{d1+d2-n}, 0)
    bool vacuous;    // raw value was <= 0
};
IntersectionProbBound trivial_intersection_prob_bound(int n, int d1, int d2);

struct AvoidanceResult {
    bool disjoint;
    Rational ratio;  // |V cap W| / |V|; zero when disjoint
};
// Reports Disjoint exactly when |V cap W|/|W| < |V|/2^n (then the
// intersection is empty); otherwise the exact ratio, >= |W|/2^n.
AvoidanceResult affine_avoidance_check(const AffineSubspace& v, const AffineSubspace& w);

BigInt gaussian_binomial(int n, int k);

// Enumerates every dimension-d subspace of {0,1}^n once, in a canonical order
// (RREF bases, pivot sets ascending). Count is gaussian_binomial(n, d).
void for_each_subspace(int n, int d, const std::function<void(const Subspace&)>& fn);

}  // namespace larclab
