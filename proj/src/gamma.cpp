#include "q2/gamma.hpp"

#include <fmt/format.h>

namespace q2 {

namespace {

std::vector<std::pair<int, int>> gamma_pairs(int r) {
    std::vector<std::pair<int, int>> p;
    for (int i = 0; i < r; ++i) p.emplace_back(i, i);
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) p.emplace_back(i, j);
    return p;
}

int pair_index(int i, int j, int r) {
    if (i > j) std::swap(i, j);
    if (i == j) return i;
    // mixed pairs (i, j) with i < j, lexicographic
    return r + i * (2 * r - i - 1) / 2 + (j - i - 1);
}

// Gamma(f) for f : Z^ra -> Z^rb.
IntMatrix gamma_of(const IntMatrix& f) {
    int ra = f.cols(), rb = f.rows();
    auto pa = gamma_pairs(ra);
    IntMatrix G(rb * (rb + 1) / 2, static_cast<int>(pa.size()));
    for (size_t c = 0; c < pa.size(); ++c) {
        auto [i, j] = pa[c];
        for (int k = 0; k < rb; ++k) {
            if (i == j) {
                G(k, c) += f(k, i) * f(k, i);
                for (int l = k + 1; l < rb; ++l) G(pair_index(k, l, rb), c) += f(k, i) * f(l, i);
            } else {
                G(k, c) += 2 * f(k, i) * f(k, j);
                for (int l = k + 1; l < rb; ++l) G(pair_index(k, l, rb), c) += f(k, i) * f(l, j) + f(l, i) * f(k, j);
            }
        }
    }
    return G;
}

}  // namespace

int GammaLattice::index(int i, int j) const { return pair_index(i, j, source.rank()); }

GammaLattice gamma(const BasedLattice& A) {
    GammaLattice X;
    X.source = A;
    int r = A.rank();
    X.pairs = gamma_pairs(r);
    BasedLattice& L = X.lattice;
    L.G = A.G;
    L.truncated = A.truncated;
    L.L = A.L;
    for (auto [i, j] : X.pairs) {
        L.labels.push_back(i == j ? fmt::format("{0}.{0}", A.labels[i]) : fmt::format("{}.{}", A.labels[i], A.labels[j]));
        L.safe.push_back(A.safe[i] && A.safe[j]);
    }
    for (const auto& m : A.action) L.action.push_back(gamma_of(m));
    L.validate();
    return X;
}

IntMatrix coinvariant_relations(const BasedLattice& X, const Character& w) {
    int r = X.rank();
    IntMatrix rel(r, 0);
    for (size_t g = 0; g < X.action.size(); ++g) {
        IntMatrix m = X.action[g];
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < r; ++j) m(i, j) *= w[static_cast<int>(g)];
            m(i, i) -= 1;
        }
        for (int j = 0; j < r; ++j)
            if (X.safe[j]) rel = rel.hcat(m.column(j));
    }
    return rel;
}

AbGroup coinvariants(const BasedLattice& X, const Character& w) { return cokernel(coinvariant_relations(X, w)); }

BasedLattice tensor(const BasedLattice& A, const BasedLattice& B) {
    if (!(*A.G == *B.G)) throw Error("tensor: lattices over different groups");
    BasedLattice T;
    T.G = A.G;
    T.truncated = A.truncated || B.truncated;
    T.L = std::max(A.L, B.L);
    int ra = A.rank(), rb = B.rank();
    for (int i = 0; i < ra; ++i)
        for (int j = 0; j < rb; ++j) {
            T.labels.push_back(A.labels[i] + "(x)" + B.labels[j]);
            T.safe.push_back(A.safe[i] && B.safe[j]);
        }
    for (size_t g = 0; g < A.action.size(); ++g) {
        IntMatrix M(ra * rb, ra * rb);
        const IntMatrix &x = A.action[g], &y = B.action[g];
        for (int i = 0; i < ra; ++i)
            for (int j = 0; j < rb; ++j)
                for (int k = 0; k < ra; ++k)
                    for (int l = 0; l < rb; ++l) M(k * rb + l, i * rb + j) = x(k, i) * y(l, j);
        T.action.push_back(M);
    }
    T.validate();
    return T;
}

BauesSplit baues_split(const BasedLattice& A, const BasedLattice& Ap) {
    BauesSplit S;
    S.source = direct_sum(direct_sum(gamma(A).lattice, gamma(Ap).lattice), tensor(A, Ap));
    BasedLattice sum = direct_sum(A, Ap);
    S.target = gamma(sum).lattice;
    int r = A.rank(), rp = Ap.rank(), n = r + rp;
    S.map = IntMatrix(S.target.rank(), S.source.rank());
    int col = 0;
    for (auto [i, j] : gamma_pairs(r)) S.map(pair_index(i, j, n), col++) = 1;
    for (auto [i, j] : gamma_pairs(rp)) S.map(pair_index(r + i, r + j, n), col++) = 1;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < rp; ++j) S.map(pair_index(i, r + j, n), col++) = 1;
    return S;
}

GammaIdeal gamma_ideal(const Character& v, int L) {
    const GroupPtr& G = v.group();
    GammaIdeal R;
    BasedLattice P = regular(G, L);
    BasedLattice I = aug_ideal(v, L);
    R.full = gamma(P);
    R.gamma_ideal = gamma(I);
    int n = P.rank(), m = I.rank();
    auto words = ball(*G, L);

    // Q: the mixed block of Gamma(Z pi)
    BasedLattice& Q = R.quotient;
    Q.G = G;
    Q.truncated = P.truncated;
    Q.L = L;
    int q = n * (n - 1) / 2;
    for (int k = 0; k < q; ++k) {
        Q.labels.push_back(R.full.lattice.labels[n + k]);
        Q.safe.push_back(R.full.lattice.safe[n + k]);
    }
    for (const auto& a : R.full.lattice.action) {
        IntMatrix b(q, q);
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) b(i, j) = a(n + i, n + j);
        Q.action.push_back(b);
    }
    Q.validate();

    // Z pi basis index g <-> I basis index g - 1 (identity is first)
    auto qi = [&](int g, int h) { return pair_index(g, h, n) - n; };
    auto ii = [&](int g, int h) { return R.gamma_ideal.index(g - 1, h - 1); };
    auto vv = [&](int g) { return v.eval(words[g]); };

    R.theta = IntMatrix(R.gamma_ideal.rank(), q);
    for (int g = 0; g < n; ++g)
        for (int h = g + 1; h < n; ++h) {
            int c = qi(g, h), s = -vv(g) * vv(h);
            // -v(gh) (b_g - b_h)(x)(b_g - b_h), with b_1 = 0
            if (g > 0) R.theta(ii(g, g), c) += s;
            R.theta(ii(h, h), c) += s;
            if (g > 0) R.theta(ii(g, h), c) -= s;
        }
    R.psi = IntMatrix(q, R.gamma_ideal.rank());
    for (int g = 1; g < n; ++g) {
        R.psi(qi(0, g), ii(g, g)) = -vv(g);
        for (int h = g + 1; h < n; ++h) {
            int c = ii(g, h);
            R.psi(qi(g, h), c) += vv(g) * vv(h);
            R.psi(qi(0, g), c) -= vv(g);
            R.psi(qi(0, h), c) -= vv(h);
        }
    }

    IntMatrix inc(n, m);
    for (int g = 1; g < n; ++g) {
        inc(g, g - 1) = vv(g);
        inc(0, g - 1) = -1;
    }
    R.split_source = direct_sum(R.gamma_ideal.lattice, P);
    R.split = gamma_of(inc).hcat(IntMatrix(R.full.rank(), n));
    for (int g = 0; g < n; ++g) R.split(g, R.gamma_ideal.rank() + g) = 1;
    return R;
}

}  // namespace q2
