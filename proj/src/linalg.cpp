#include "einlike/linalg.hpp"

#include "einlike/errors.hpp"

#include <cmath>

namespace einlike {

Mat Mat::identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat operator*(const Mat& x, const Mat& y) {
    Mat r(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            const double xik = x(i, k);
            if (xik == 0.0) continue;
            for (int j = 0; j < x.n; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

SymEigen sym_eigen(const Mat& m) {
    const int n = m.n;
    Mat a = m;
    Mat v = Mat::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        // largest off-diagonal element
        int p = 0, q = 1;
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (std::abs(a(i, j)) > off) {
                    off = std::abs(a(i, j));
                    p = i;
                    q = j;
                }
        if (n < 2 || off < 1e-15) break;
        const double app = a(p, p), aqq = a(q, q), apq = a(p, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
            const double akp = a(k, p), akq = a(k, q);
            a(k, p) = c * akp - s * akq;
            a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
            const double apk = a(p, k), aqk = a(q, k);
            a(p, k) = c * apk - s * aqk;
            a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
            const double vkp = v(k, p), vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
        }
    }
    SymEigen out;
    out.values.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.values[static_cast<std::size_t>(i)] = a(i, i);
    out.vectors = std::move(v);
    return out;
}

SymFactorization sym_factorize(const Mat& m, double zero_threshold) {
    const SymEigen eig = sym_eigen(m);
    SymFactorization f;
    f.det = 1.0;
    f.inverse = Mat(m.n);
    for (int k = 0; k < m.n; ++k) {
        const double lambda = eig.values[static_cast<std::size_t>(k)];
        f.det *= lambda;
        if (std::abs(lambda) <= zero_threshold) {
            ++f.zero;
            continue;
        }
        if (lambda < 0.0) ++f.negative;
        for (int i = 0; i < m.n; ++i)
            for (int j = 0; j < m.n; ++j)
                f.inverse(i, j) += eig.vectors(i, k) * eig.vectors(j, k) / lambda;
    }
    return f;
}

std::vector<Jet> jet_matrix_inverse(std::span<const Jet> m, int n) {
    if (static_cast<int>(m.size()) != n * n) throw Error("jet matrix size mismatch");
    std::vector<Jet> a(m.begin(), m.end());
    const int dim = a[0].dim();
    const int order = a[0].order();
    std::vector<Jet> inv;
    inv.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            inv.push_back(Jet::constant(i == j ? 1.0 : 0.0, dim, order));

    auto at = [n](std::vector<Jet>& v, int i, int j) -> Jet& {
        return v[static_cast<std::size_t>(i) * n + j];
    };

    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(at(a, r, col).value()) > std::abs(at(a, pivot, col).value())) pivot = r;
        if (at(a, pivot, col).value() == 0.0)
            throw GeometryError("singular matrix in jet inversion");
        if (pivot != col)
            for (int j = 0; j < n; ++j) {
                std::swap(at(a, pivot, j), at(a, col, j));
                std::swap(at(inv, pivot, j), at(inv, col, j));
            }
        const Jet scale = jet_reciprocal(at(a, col, col));
        for (int j = 0; j < n; ++j) {
            at(a, col, j) = at(a, col, j) * scale;
            at(inv, col, j) = at(inv, col, j) * scale;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const Jet factor = at(a, r, col);
            for (int j = 0; j < n; ++j) {
                at(a, r, j) -= factor * at(a, col, j);
                at(inv, r, j) -= factor * at(inv, col, j);
            }
        }
    }
    return inv;
}

} // namespace einlike
