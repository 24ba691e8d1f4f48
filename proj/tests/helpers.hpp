#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nil2kit/jordan.hpp"
#include "nil2kit/matrix.hpp"

namespace testing {

using namespace nil2kit;

inline Matrix jc(std::size_t k) { return Matrix::jordan_cell(k, Backend::exact); }

inline Matrix jc(std::size_t k, long re, long im = 0) {
    return Matrix::jordan_cell(k, Scalar(GaussQ(mpq_class(re), mpq_class(im))));
}

inline Matrix diag(std::vector<long> d) {
    std::vector<Scalar> s;
    for (long x : d) s.push_back(Scalar(GaussQ(x)));
    return Matrix::diagonal(s);
}

inline Matrix block_diag(std::vector<Matrix> blocks) { return direct_sum(blocks); }

/// Product of random elementary row operations; determinant ±1 and exactly invertible.
inline Matrix random_invertible(std::size_t n, std::mt19937_64& rng, int ops = 0) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::vector<std::vector<long>> id(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    Matrix p = Matrix::from_ints(id);
    if (ops == 0) ops = static_cast<int>(3 * n);
    for (int k = 0; k < ops && n > 1; ++k) {
        const int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        std::vector<std::vector<long>> e = id;
        e[i][j] = coef(rng);
        p = p * Matrix::from_ints(e);
    }
    return p;
}

/// Weyr sequence by direct rank computation, independent of the library's routine.
inline std::vector<std::size_t> nullities(const Matrix& t, const Scalar& lambda) {
    const std::size_t n = t.rows();
    const Matrix a = shift(t, lambda);
    std::vector<std::size_t> out;
    Matrix p = a;
    for (std::size_t k = 1; k <= n; ++k) {
        out.push_back(n - rank(p));
        if (out.size() >= 2 && out.back() == out[out.size() - 2]) {
            out.pop_back();
            break;
        }
        p = p * a;
    }
    return out;
}

/// Partition as the conjugate of the nullity increments.
inline std::vector<int> partition_from_nullities(const std::vector<std::size_t>& w) {
    std::vector<int> inc;
    std::size_t prev = 0;
    for (auto x : w) {
        inc.push_back(static_cast<int>(x - prev));
        prev = x;
    }
    std::vector<int> parts;
    if (inc.empty()) return parts;
    for (int i = 1; i <= inc.front(); ++i) {
        int c = 0;
        for (int v : inc) c += v >= i ? 1 : 0;
        parts.push_back(c);
    }
    return parts;
}

}  // namespace testing
