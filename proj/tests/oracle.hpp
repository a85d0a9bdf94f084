#pragma once

// Test-only Born-rule oracle. Deliberately shares no code with the
// library's eigenbasis/measurement path: raw nested vectors, explicit
// single-qubit projectors tensored together, expectation values only.

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
using vec = std::vector<cd>;
using mat = std::vector<std::vector<cd>>;

inline mat matmul(const mat& a, const mat& b) {
    const std::size_t n = a.size(), m = b[0].size(), k = b.size();
    mat out(n, std::vector<cd>(m, cd{0, 0}));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            for (std::size_t j = 0; j < m; ++j)
                out[i][j] += a[i][l] * b[l][j];
    return out;
}

inline mat kron(const mat& a, const mat& b) {
    const std::size_t ar = a.size(), ac = a[0].size();
    const std::size_t br = b.size(), bc = b[0].size();
    mat out(ar * br, std::vector<cd>(ac * bc, cd{0, 0}));
    for (std::size_t i = 0; i < ar; ++i)
        for (std::size_t j = 0; j < ac; ++j)
            for (std::size_t k = 0; k < br; ++k)
                for (std::size_t l = 0; l < bc; ++l)
                    out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
    return out;
}

inline mat sigma(double theta) {
    return {{cd{0, 0}, cd{std::cos(theta), -std::sin(theta)}},
            {cd{std::cos(theta), std::sin(theta)}, cd{0, 0}}};
}

// (I + sign * sigma(theta)) / 2
inline mat projector(double theta, int sign) {
    mat s = sigma(theta);
    mat out(2, std::vector<cd>(2, cd{0, 0}));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            out[i][j] = (cd{i == j ? 1.0 : 0.0, 0.0} + cd{double(sign), 0.0} * s[i][j]) / 2.0;
    return out;
}

inline double expectation(const vec& psi, const mat& op) {
    cd e{0, 0};
    for (std::size_t i = 0; i < psi.size(); ++i)
        for (std::size_t j = 0; j < psi.size(); ++j)
            e += std::conj(psi[i]) * op[i][j] * psi[j];
    return e.real();
}

/// P(outcomes | angles) for independent spin measurements on `psi`.
inline double state_prob(const vec& psi, const std::vector<double>& angles,
                         const std::vector<int>& signs) {
    mat op = projector(angles[0], signs[0]);
    for (std::size_t q = 1; q < angles.size(); ++q)
        op = kron(op, projector(angles[q], signs[q]));
    return expectation(psi, op);
}

inline vec singlet() {
    const double r = 1.0 / std::sqrt(2.0);
    return {cd{0, 0}, cd{r, 0}, cd{-r, 0}, cd{0, 0}};
}

inline vec psi_in() {
    const double r = 1.0 / std::sqrt(2.0);
    return {cd{r, 0}, {}, {}, {}, {}, {}, {}, cd{-r, 0}};
}

inline vec ghz_plus() {
    const double r = 1.0 / std::sqrt(2.0);
    return {cd{r, 0}, {}, {}, {}, {}, {}, {}, cd{r, 0}};
}

inline double singlet_prob(double x, double y, int a, int b) {
    return state_prob(singlet(), {x, y}, {a, b});
}

inline double ghz_prob(double u, double v, double w, int a, int b, int c) {
    return state_prob(psi_in(), {u, v, w}, {a, b, c});
}

}  // namespace oracle
