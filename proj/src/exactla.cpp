#include "q2/exactla.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <regex>

namespace q2 {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    r_ = static_cast<int>(rows.size());
    c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != c_) throw Error("ragged IntMatrix initializer");
        for (long x : row) a_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

IntMatrix IntMatrix::from_triplets(int r, int c, const std::vector<std::tuple<int, int, mpz_class>>& t) {
    IntMatrix M(r, c);
    for (const auto& [i, j, v] : t) {
        if (i < 0 || i >= r || j < 0 || j >= c) throw Error("triplet out of range");
        M(i, j) += v;
    }
    return M;
}

std::vector<std::tuple<int, int, mpz_class>> IntMatrix::triplets() const {
    std::vector<std::tuple<int, int, mpz_class>> t;
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j)
            if ((*this)(i, j) != 0) t.emplace_back(i, j, (*this)(i, j));
    return t;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix T(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) T(j, i) = (*this)(i, j);
    return T;
}

IntMatrix IntMatrix::column(int j) const { return columns(j, j + 1); }

IntMatrix IntMatrix::columns(int from, int to) const {
    IntMatrix M(r_, to - from);
    for (int i = 0; i < r_; ++i)
        for (int j = from; j < to; ++j) M(i, j - from) = (*this)(i, j);
    return M;
}

IntMatrix IntMatrix::hcat(const IntMatrix& o) const {
    if (r_ != o.r_) throw Error("hcat: row mismatch");
    IntMatrix M(r_, c_ + o.c_);
    for (int i = 0; i < r_; ++i) {
        for (int j = 0; j < c_; ++j) M(i, j) = (*this)(i, j);
        for (int j = 0; j < o.c_; ++j) M(i, c_ + j) = o(i, j);
    }
    return M;
}

IntMatrix IntMatrix::vcat(const IntMatrix& o) const {
    if (c_ != o.c_) throw Error("vcat: column mismatch");
    IntMatrix M(r_ + o.r_, c_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) M(i, j) = (*this)(i, j);
    for (int i = 0; i < o.r_; ++i)
        for (int j = 0; j < c_; ++j) M(r_ + i, j) = o(i, j);
    return M;
}

bool IntMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const mpz_class& x) { return x == 0; });
}

std::string IntMatrix::render() const {
    std::vector<std::string> rs;
    for (int i = 0; i < r_; ++i) {
        std::vector<std::string> es;
        for (int j = 0; j < c_; ++j) es.push_back((*this)(i, j).get_str());
        rs.push_back("[" + fmt::format("{}", fmt::join(es, ", ")) + "]");
    }
    return "[" + fmt::format("{}", fmt::join(rs, ", ")) + "]";
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols() != y.rows())
        throw Error(fmt::format("IntMatrix shape mismatch {}x{} * {}x{}", x.rows(), x.cols(), y.rows(), y.cols()));
    IntMatrix r(x.rows(), y.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int k = 0; k < x.cols(); ++k) {
            const mpz_class& a = x(i, k);
            if (a == 0) continue;
            for (int j = 0; j < y.cols(); ++j) r(i, j) += a * y(k, j);
        }
    return r;
}

IntMatrix operator+(const IntMatrix& x, const IntMatrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) throw Error("IntMatrix + shape mismatch");
    IntMatrix r = x;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) r(i, j) += y(i, j);
    return r;
}

IntMatrix operator-(const IntMatrix& x, const IntMatrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) throw Error("IntMatrix - shape mismatch");
    IntMatrix r = x;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) r(i, j) -= y(i, j);
    return r;
}

IntMatrix block_diag(const IntMatrix& x, const IntMatrix& y) {
    IntMatrix r(x.rows() + y.rows(), x.cols() + y.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) r(i, j) = x(i, j);
    for (int i = 0; i < y.rows(); ++i)
        for (int j = 0; j < y.cols(); ++j) r(x.rows() + i, x.cols() + j) = y(i, j);
    return r;
}

namespace {

void swap_rows(IntMatrix& M, int a, int b) {
    if (a == b) return;
    for (int j = 0; j < M.cols(); ++j) std::swap(M(a, j), M(b, j));
}
void swap_cols(IntMatrix& M, int a, int b) {
    if (a == b) return;
    for (int i = 0; i < M.rows(); ++i) std::swap(M(i, a), M(i, b));
}
// row a -= q * row b
void row_axpy(IntMatrix& M, int a, int b, const mpz_class& q) {
    for (int j = 0; j < M.cols(); ++j)
        if (M(b, j) != 0) M(a, j) -= q * M(b, j);
}
void col_axpy(IntMatrix& M, int a, int b, const mpz_class& q) {
    for (int i = 0; i < M.rows(); ++i)
        if (M(i, b) != 0) M(i, a) -= q * M(i, b);
}

}  // namespace

SNF smith_normal_form(const IntMatrix& A) {
    const int m = A.rows(), n = A.cols();
    SNF s{IntMatrix::identity(m), A, IntMatrix::identity(n), 0, {}};
    IntMatrix& D = s.D;
    int t = 0;
    for (; t < std::min(m, n); ++t) {
        // global minimum-magnitude pivot in the trailing block
        int pi = -1, pj = -1;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j)
                if (D(i, j) != 0 && (pi < 0 || abs(D(i, j)) < abs(D(pi, pj)))) pi = i, pj = j;
        if (pi < 0) break;
        swap_rows(D, t, pi), swap_rows(s.U, t, pi);
        swap_cols(D, t, pj), swap_cols(s.V, t, pj);
        while (true) {
            bool clean = true;
            for (int i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
                row_axpy(D, i, t, q), row_axpy(s.U, i, t, q);
                if (D(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
                col_axpy(D, j, t, q), col_axpy(s.V, j, t, q);
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) {
                // smaller remainder now sits in row/column t; bring it to the pivot
                int bi = t, bj = t;
                for (int i = t + 1; i < m; ++i)
                    if (D(i, t) != 0 && abs(D(i, t)) < abs(D(bi, bj))) bi = i, bj = t;
                for (int j = t + 1; j < n; ++j)
                    if (D(t, j) != 0 && abs(D(t, j)) < abs(D(bi, bj))) bi = t, bj = j;
                swap_rows(D, t, bi), swap_rows(s.U, t, bi);
                swap_cols(D, t, bj), swap_cols(s.V, t, bj);
                continue;
            }
            int bad = -1;
            for (int i = t + 1; i < m && bad < 0; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            row_axpy(D, t, bad, -1), row_axpy(s.U, t, bad, -1);
        }
        if (D(t, t) < 0) {
            for (int j = 0; j < n; ++j) D(t, j) = -D(t, j);
            for (int j = 0; j < m; ++j) s.U(t, j) = -s.U(t, j);
        }
        s.diag.push_back(D(t, t));
    }
    s.rank = t;
    return s;
}

mpz_class determinant(const IntMatrix& A) {
    if (A.rows() != A.cols()) throw Error("determinant of a non-square matrix");
    int n = A.rows();
    if (n == 0) return 1;
    IntMatrix M = A;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (M(k, k) == 0) {
            int p = k + 1;
            while (p < n && M(p, k) == 0) ++p;
            if (p == n) return 0;
            swap_rows(M, k, p);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                mpz_class v = M(i, j) * M(k, k) - M(i, k) * M(k, j);
                mpz_divexact(M(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
        prev = M(k, k);
    }
    return sign * M(n - 1, n - 1);
}

int rank_mod(const IntMatrix& A, unsigned long p) {
    int m = A.rows(), n = A.cols();
    std::vector<std::vector<unsigned long>> M(m, std::vector<unsigned long>(n));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            mpz_class r;
            mpz_fdiv_r_ui(r.get_mpz_t(), A(i, j).get_mpz_t(), p);
            M[i][j] = r.get_ui();
        }
    auto inv = [p](unsigned long a) {
        unsigned long r = 1, e = p - 2;
        unsigned long b = a % p;
        while (e) {
            if (e & 1) r = static_cast<unsigned long>((static_cast<unsigned __int128>(r) * b) % p);
            b = static_cast<unsigned long>((static_cast<unsigned __int128>(b) * b) % p);
            e >>= 1;
        }
        return r;
    };
    int rk = 0;
    for (int c = 0; c < n && rk < m; ++c) {
        int piv = -1;
        for (int i = rk; i < m; ++i)
            if (M[i][c]) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[rk], M[piv]);
        unsigned long iv = inv(M[rk][c]);
        for (int i = 0; i < m; ++i) {
            if (i == rk || !M[i][c]) continue;
            unsigned long f = static_cast<unsigned long>((static_cast<unsigned __int128>(M[i][c]) * iv) % p);
            for (int j = c; j < n; ++j)
                M[i][j] = static_cast<unsigned long>(
                    (M[i][j] + p - (static_cast<unsigned __int128>(f) * M[rk][j]) % p) % p);
        }
        ++rk;
    }
    return rk;
}

int rank(const IntMatrix& A) { return smith_normal_form(A).rank; }

IntMatrix kernel_basis(const IntMatrix& A) {
    SNF s = smith_normal_form(A);
    return s.V.columns(s.rank, A.cols());
}

std::optional<IntMatrix> solve(const IntMatrix& A, const IntMatrix& b) {
    if (b.rows() != A.rows() || b.cols() != 1) throw Error("solve: right-hand side must be a column of matching height");
    SNF s = smith_normal_form(A);
    IntMatrix c = s.U * b;
    IntMatrix y(A.cols(), 1);
    for (int i = 0; i < A.rows(); ++i) {
        if (i < s.rank) {
            if (c(i, 0) % s.diag[i] != 0) return std::nullopt;
            y(i, 0) = c(i, 0) / s.diag[i];
        } else if (c(i, 0) != 0) {
            return std::nullopt;
        }
    }
    return s.V * y;
}

IntMatrix saturate(const IntMatrix& A) {
    // saturation of im A = kernel of (left kernel of A)^T
    IntMatrix L = kernel_basis(A.transpose());
    return kernel_basis(L.transpose());
}

AbGroup::AbGroup(int rank, std::vector<mpz_class> torsion) {
    std::vector<mpz_class> o(torsion);
    for (int i = 0; i < rank; ++i) o.push_back(0);
    *this = from_orders(o);
}

AbGroup AbGroup::from_orders(const std::vector<mpz_class>& orders) {
    int n = static_cast<int>(orders.size());
    IntMatrix D(n, n);
    for (int i = 0; i < n; ++i) D(i, i) = orders[i];
    return cokernel(D);
}

AbGroup AbGroup::operator+(const AbGroup& o) const {
    std::vector<mpz_class> all = tors_;
    all.insert(all.end(), o.tors_.begin(), o.tors_.end());
    return AbGroup(rank_ + o.rank_, all);
}

std::string AbGroup::render() const {
    if (trivial()) return "0";
    std::vector<std::string> parts;
    if (rank_ == 1) parts.push_back("Z");
    if (rank_ > 1) parts.push_back(fmt::format("Z^{}", rank_));
    for (const auto& d : tors_) parts.push_back("Z/" + d.get_str());
    return fmt::format("{}", fmt::join(parts, " + "));
}

AbGroup AbGroup::parse(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t == "0") return AbGroup();
    std::vector<mpz_class> orders;
    std::regex zr("Z(\\^([0-9]+))?"), tr("Z/([0-9]+)");
    size_t start = 0;
    while (start <= t.size()) {
        size_t plus = t.find('+', start);
        std::string part = t.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
        std::smatch m;
        if (std::regex_match(part, m, tr)) {
            orders.emplace_back(m[1].str());
        } else if (std::regex_match(part, m, zr)) {
            int r = m[2].matched ? std::stoi(m[2]) : 1;
            for (int i = 0; i < r; ++i) orders.emplace_back(0);
        } else {
            throw ParseError("bad abelian group", 1, static_cast<int>(start) + 1, part);
        }
        if (plus == std::string::npos) break;
        start = plus + 1;
    }
    return from_orders(orders);
}

AbGroup cokernel(const IntMatrix& A) {
    SNF s = smith_normal_form(A);
    AbGroup g;
    g.rank_ = A.rows() - s.rank;
    for (const auto& d : s.diag)
        if (d != 1) g.tors_.push_back(d);
    return g;
}

void IntComplex::validate() const {
    if (d.size() + 1 != dims.size()) throw Error("IntComplex: need one differential per positive degree");
    for (size_t k = 0; k < d.size(); ++k) {
        if (d[k].rows() != dims[k] || d[k].cols() != dims[k + 1])
            throw Error(fmt::format("IntComplex: d_{} has shape {}x{}, expected {}x{}", k + 1, d[k].rows(),
                                    d[k].cols(), dims[k], dims[k + 1]));
        if (k > 0 && !(d[k - 1] * d[k]).is_zero()) throw Error(fmt::format("IntComplex: d_{} d_{} != 0", k, k + 1));
    }
}

AbGroup homology_at(const IntComplex& C, int k) {
    if (k < 0 || k > C.top()) throw Error(fmt::format("homology degree {} out of range 0..{}", k, C.top()));
    int rk_out = k >= 1 ? rank(C.d[k - 1]) : 0;
    int ck = C.dims[k];
    if (k + 1 > C.top()) return AbGroup(ck - rk_out, {});
    SNF s = smith_normal_form(C.d[k]);
    std::vector<mpz_class> tors;
    for (const auto& d : s.diag)
        if (d != 1) tors.push_back(d);
    return AbGroup(ck - rk_out - s.rank, tors);
}

IntMatrix unimodular_inverse(const IntMatrix& U) {
    if (U.rows() != U.cols()) throw Error("unimodular_inverse: matrix is not square");
    SNF s = smith_normal_form(U);  // s.U U s.V = I
    if (s.rank != U.rows() || (U.rows() && s.diag.back() != 1)) throw Error("unimodular_inverse: matrix is not unimodular");
    return s.V * s.U;
}

IntMatrix power(const IntMatrix& A, long k) {
    IntMatrix base = k < 0 ? unimodular_inverse(A) : A;
    IntMatrix r = IntMatrix::identity(A.rows());
    for (long e = std::labs(k); e; e >>= 1) {
        if (e & 1) r = r * base;
        base = base * base;
    }
    return r;
}

Subquotient subquotient(const IntMatrix& Z, const IntMatrix& B) {
    Subquotient q;
    q.K = kernel_basis(Z);
    int m = q.K.cols();
    SNF sk = smith_normal_form(q.K);
    IntMatrix P(m, q.K.rows());
    for (int i = 0; i < m; ++i) P(i, i) = 1;
    q.Kinv = sk.V * P * sk.U;
    IntMatrix X = q.Kinv * B;
    if (!(q.K * X == B)) throw Error("subquotient: boundaries are not cycles");
    SNF sx = smith_normal_form(X);
    q.U = sx.U;
    q.rank_boundary = sx.rank;
    for (const auto& d : sx.diag)
        if (d != 1) q.torsion.push_back(d);
    IntMatrix Ui = unimodular_inverse(sx.U);
    q.free_basis = q.K * Ui.columns(sx.rank, m);
    return q;
}

std::vector<mpz_class> Subquotient::kernel_coords(const IntMatrix& x) const {
    IntMatrix y = Kinv * x;
    if (!(K * y == x)) throw Error("subquotient: vector is not a cycle");
    std::vector<mpz_class> out;
    for (int i = 0; i < y.rows(); ++i) out.push_back(y(i, 0));
    return out;
}

IntMatrix Subquotient::project(const IntMatrix& x) const {
    IntMatrix y = Kinv * x;
    if (!(K * y == x)) throw Error("subquotient: vector is not a cycle");
    IntMatrix z = U * y;
    IntMatrix r(z.rows() - rank_boundary, 1);
    for (int i = rank_boundary; i < z.rows(); ++i) r(i - rank_boundary, 0) = z(i, 0);
    return r;
}

}  // namespace q2
