#include "qcanon/qcomb.hpp"

namespace qcanon {

namespace {

GammaMonomial q_pow(int e, QBase base) { return GammaMonomial::q(base == QBase::Q ? e : -e); }

}  // namespace

GammaLaurent q_int(int n, QBase base) {
    if (n < 0) throw Error("q_int: negative argument");
    if (n <= 1) return GammaLaurent(1);
    GammaLaurent r;
    for (int k = 0; k < n; ++k) r += GammaLaurent(q_pow(2 * k, base));
    return r;
}

GammaLaurent q_factorial(int n, QBase base) {
    if (n < 0) throw Error("q_factorial: negative argument");
    GammaLaurent r(1);
    for (int k = 2; k <= n; ++k) r *= q_int(k, base);
    return r;
}

GammaLaurent q_binomial(int n, int i, QBase base) {
    if (n < 0 || i < 0 || i > n) return {};
    // row-by-row Pascal recursion
    std::vector<GammaLaurent> row{GammaLaurent(1)};
    for (int m = 0; m < n; ++m) {
        std::vector<GammaLaurent> next(m + 2);
        for (int k = 0; k <= m + 1; ++k) {
            if (k <= m) next[k] += row[k];
            if (k >= 1) next[k] += row[k - 1] * q_pow(2 * m - 2 * k + 2, base);
        }
        row = std::move(next);
    }
    return row[i];
}

}  // namespace qcanon
