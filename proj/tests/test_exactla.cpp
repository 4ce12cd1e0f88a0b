#include <random>

#include "doctest.h"
#include "q2/exactla.hpp"

using namespace q2;

namespace {

// Oracle helpers, independent of the SNF code: cofactor determinants and
// determinantal divisors.
mpz_class cofactor_det(const std::vector<std::vector<mpz_class>>& m) {
    size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    mpz_class s = 0;
    for (size_t j = 0; j < n; ++j) {
        std::vector<std::vector<mpz_class>> sub;
        for (size_t i = 1; i < n; ++i) {
            std::vector<mpz_class> row;
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            sub.push_back(row);
        }
        mpz_class c = m[0][j] * cofactor_det(sub);
        s += (j % 2 ? -c : c);
    }
    return s;
}

void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// gcd of all k x k minors
mpz_class minor_gcd(const IntMatrix& A, int k) {
    std::vector<std::vector<int>> rs, cs;
    std::vector<int> cur;
    subsets(A.rows(), k, 0, cur, rs);
    subsets(A.cols(), k, 0, cur, cs);
    mpz_class g = 0;
    for (auto& r : rs)
        for (auto& c : cs) {
            std::vector<std::vector<mpz_class>> m;
            for (int i : r) {
                std::vector<mpz_class> row;
                for (int j : c) row.push_back(A(i, j));
                m.push_back(row);
            }
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), cofactor_det(m).get_mpz_t());
        }
    return g;
}

// invariant factors from determinantal divisors
std::vector<mpz_class> oracle_invariants(const IntMatrix& A) {
    std::vector<mpz_class> out;
    mpz_class prev = 1;
    for (int k = 1; k <= std::min(A.rows(), A.cols()); ++k) {
        mpz_class g = minor_gcd(A, k);
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

IntMatrix random_matrix(std::mt19937& rng, int r, int c, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix M(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) M(i, j) = d(rng);
    return M;
}

}  // namespace

TEST_CASE("SNF examples") {
    auto s = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
    CHECK(s.D == IntMatrix{{1, 0}, {0, 6}});
    CHECK(smith_normal_form(IntMatrix{{0}}).D == IntMatrix{{0}});
    CHECK(smith_normal_form(IntMatrix{{2, 4}, {6, 8}}).D == IntMatrix{{2, 0}, {0, 4}});
    CHECK(smith_normal_form(IntMatrix(0, 3)).rank == 0);
}

TEST_CASE("kernel basis examples") {
    CHECK(kernel_basis(IntMatrix{{2, 0}}) == IntMatrix{{0}, {1}});
    CHECK(kernel_basis(IntMatrix::identity(3)).cols() == 0);
    auto k = kernel_basis(IntMatrix{{1, 1}, {1, 1}});
    REQUIRE(k.cols() == 1);
    CHECK(k(0, 0) == -k(1, 0));
    CHECK(abs(k(0, 0)) == 1);
}

TEST_CASE("SNF properties on random matrices") {
    std::mt19937 rng(3);
    for (int it = 0; it < 400; ++it) {
        int r = rng() % 9, c = rng() % 9;
        IntMatrix A = random_matrix(rng, r, c, -9, 9);
        if (it % 5 == 0 && r > 1) {
            for (int j = 0; j < c; ++j) A(r - 1, j) = 2 * A(0, j);  // force rank deficiency
        }
        SNF s = smith_normal_form(A);
        CHECK(s.U * A * s.V == s.D);
        CHECK(abs(determinant(s.U)) == 1);
        CHECK(abs(determinant(s.V)) == 1);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (i != j) CHECK(s.D(i, j) == 0);
        for (size_t i = 0; i + 1 < s.diag.size(); ++i) CHECK(s.diag[i + 1] % s.diag[i] == 0);
        for (const auto& d : s.diag) CHECK(d > 0);
        IntMatrix K = kernel_basis(A);
        CHECK(K.cols() == c - s.rank);
        CHECK((A * K).is_zero());
        CHECK(rank_mod(K, 1000003) == K.cols());
        CHECK(rank_mod(K, 2) == K.cols());  // saturated: independent mod every prime
        if (r && c) CHECK(s.rank == rank_mod(A, 1000003));
        if (r <= 4 && c <= 4) CHECK(s.diag == oracle_invariants(A));
    }
}

TEST_CASE("sparse and dense agree") {
    std::mt19937 rng(5);
    for (int it = 0; it < 50; ++it) {
        IntMatrix A = random_matrix(rng, 1 + rng() % 6, 1 + rng() % 6, -3, 3);
        CHECK(IntMatrix::from_triplets(A.rows(), A.cols(), A.triplets()) == A);
    }
}

TEST_CASE("homology of the dihedral E/F complex at T=1") {
    IntComplex C;
    C.dims = {1, 1, 2, 1, 1};
    C.d = {IntMatrix{{0}}, IntMatrix{{2, 0}}, IntMatrix{{0}, {2}}, IntMatrix{{0}}};
    C.validate();
    CHECK(homology_at(C, 0) == AbGroup(1, {}));
    CHECK(homology_at(C, 1) == AbGroup(0, {2}));
    CHECK(homology_at(C, 2) == AbGroup(0, {2}));
    CHECK(homology_at(C, 3).trivial());
    CHECK(homology_at(C, 4) == AbGroup(1, {}));
    CHECK_THROWS_AS(homology_at(C, 5), Error);

    IntComplex Z;
    Z.dims = {0, 0, 0};
    Z.d = {IntMatrix(0, 0), IntMatrix(0, 0)};
    for (int k = 0; k <= 2; ++k) CHECK(homology_at(Z, k).trivial());
}

TEST_CASE("homology against determinantal-divisor oracle") {
    std::mt19937 rng(9);
    for (int it = 0; it < 200; ++it) {
        // build d2 d1 with d1 d2 = 0 by taking d1 = X * P, d2 = Q * Y, P Q = 0
        int c0 = 1 + rng() % 4, c1 = 1 + rng() % 4, c2 = 1 + rng() % 4;
        IntMatrix d2 = random_matrix(rng, c1, c2, -3, 3);
        IntMatrix L = kernel_basis(d2.transpose()).transpose();  // rows annihilate im d2
        IntMatrix X = random_matrix(rng, c0, L.rows(), -2, 2);
        IntMatrix d1 = L.rows() ? X * L : IntMatrix(c0, c1);
        IntComplex C{{c0, c1, c2}, {d1, d2}};
        C.validate();
        AbGroup h = homology_at(C, 1);
        int free = c1 - rank_mod(d1, 1000003) - rank_mod(d2, 1000003);
        std::vector<mpz_class> tors;
        for (auto& d : oracle_invariants(d2))
            if (d != 1) tors.push_back(d);
        CHECK(h == AbGroup(free, tors));
        CHECK(h.rank() == free);
    }
}

TEST_CASE("AbGroup canonical form") {
    CHECK(AbGroup(0, {2, 3}) == AbGroup(0, {6}));
    CHECK(AbGroup(0, {4, 2}).render() == "Z/2 + Z/4");
    CHECK(AbGroup(2, {1}).render() == "Z^2");
    CHECK(AbGroup::parse("Z^2 + Z/2") == AbGroup(2, {2}));
    CHECK(AbGroup::parse("0").trivial());
}

TEST_CASE("subquotient coordinates") {
    // Z^3, cycles ker[1 1 0], boundaries spanned by (2,-2,0)
    IntMatrix Zm{{1, 1, 0}};
    IntMatrix B{{2}, {-2}, {0}};
    auto q = subquotient(Zm, B);
    CHECK(q.torsion == std::vector<mpz_class>{2});
    CHECK(q.free_rank() == 1);
    IntMatrix e3{{0}, {0}, {5}};
    CHECK(abs(q.project(e3)(0, 0)) == 5);
    CHECK(q.project(B)(0, 0) == 0);
}
