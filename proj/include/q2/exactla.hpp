#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "q2/error.hpp"

namespace q2 {

// Dense, row-major.  Zero rows or columns are allowed.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int r, int c) : r_(r), c_(c), a_(static_cast<size_t>(r) * c) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
    static IntMatrix identity(int n);
    // (row, col, value) triples; repeated positions accumulate.
    static IntMatrix from_triplets(int r, int c, const std::vector<std::tuple<int, int, mpz_class>>& t);

    int rows() const { return r_; }
    int cols() const { return c_; }
    mpz_class& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const mpz_class& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    IntMatrix transpose() const;
    IntMatrix column(int j) const;
    IntMatrix columns(int from, int to) const;  // [from, to)
    IntMatrix hcat(const IntMatrix& o) const;
    IntMatrix vcat(const IntMatrix& o) const;
    bool is_zero() const;
    std::vector<std::tuple<int, int, mpz_class>> triplets() const;

    bool operator==(const IntMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    std::string render() const;

private:
    int r_ = 0, c_ = 0;
    std::vector<mpz_class> a_;
};

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
IntMatrix operator+(const IntMatrix& x, const IntMatrix& y);
IntMatrix operator-(const IntMatrix& x, const IntMatrix& y);
IntMatrix block_diag(const IntMatrix& x, const IntMatrix& y);

struct SNF {
    IntMatrix U, D, V;  // U * A * V = D
    int rank = 0;
    std::vector<mpz_class> diag;  // the rank nonzero invariant factors
};

SNF smith_normal_form(const IntMatrix& A);
mpz_class determinant(const IntMatrix& A);  // square only, fraction-free
int rank_mod(const IntMatrix& A, unsigned long p);
int rank(const IntMatrix& A);

// Inverse of a square matrix with determinant +-1.
IntMatrix unimodular_inverse(const IntMatrix& U);
IntMatrix power(const IntMatrix& A, long k);  // k < 0 needs A unimodular

// Columns form a saturated Z-basis of {x : A x = 0}.
IntMatrix kernel_basis(const IntMatrix& A);
// Some x with A x = b (b a column), or nothing.
std::optional<IntMatrix> solve(const IntMatrix& A, const IntMatrix& b);
// Column-space basis of the saturation of im A.
IntMatrix saturate(const IntMatrix& A);

class AbGroup {
public:
    AbGroup() = default;
    // Any list of cyclic orders; 0 means Z, 1 is dropped.
    static AbGroup from_orders(const std::vector<mpz_class>& orders);
    AbGroup(int rank, std::vector<mpz_class> torsion);

    int rank() const { return rank_; }
    const std::vector<mpz_class>& torsion() const { return tors_; }
    bool trivial() const { return rank_ == 0 && tors_.empty(); }
    AbGroup operator+(const AbGroup& o) const;  // direct sum
    bool operator==(const AbGroup& o) const { return rank_ == o.rank_ && tors_ == o.tors_; }
    std::string render() const;  // "Z^2 + Z/2", "0"
    static AbGroup parse(const std::string& s);

private:
    friend AbGroup cokernel(const IntMatrix& A);
    int rank_ = 0;
    std::vector<mpz_class> tors_;
};

AbGroup cokernel(const IntMatrix& A);  // Z^rows / im A

// Column convention: d[k-1] is d_k : C_k -> C_{k-1}, size dim C_{k-1} x dim C_k.
struct IntComplex {
    std::vector<int> dims;  // dims[0..N]
    std::vector<IntMatrix> d;

    int top() const { return static_cast<int>(dims.size()) - 1; }
    void validate() const;
};

AbGroup homology_at(const IntComplex& C, int k);

// Subquotient ker/im with explicit coordinates.  K holds the kernel basis
// columns; free_basis are ambient vectors whose classes form a basis of the
// free part; project maps an ambient cycle to coordinates in that basis.
struct Subquotient {
    IntMatrix K;
    IntMatrix Kinv;       // left inverse of K on its column space
    IntMatrix U;          // SNF row transform of the boundary coordinates
    int rank_boundary = 0;
    std::vector<mpz_class> torsion;
    IntMatrix free_basis;

    std::vector<mpz_class> kernel_coords(const IntMatrix& x) const;
    IntMatrix project(const IntMatrix& x) const;  // free coordinates (column)
    int free_rank() const { return free_basis.cols(); }
};

// ker(Z) / im(B) for a cycle matrix Z (ambient rows) and boundary B.
Subquotient subquotient(const IntMatrix& Z, const IntMatrix& B);

}  // namespace q2
