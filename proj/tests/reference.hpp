#pragma once

// Test-only reference implementations. They rebuild every quantity from first
// principles (full matrices, direct enumeration) without calling the kernels
// under test.

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "spq/gate.hpp"
#include "spq/model.hpp"

namespace ref {

using C = std::complex<double>;
using Mat = std::vector<std::vector<C>>;

inline Mat identity(std::size_t n) {
    Mat m(n, std::vector<C>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = 1.0;
    }
    return m;
}

inline Mat multiply(const Mat& a, const Mat& b) {
    const std::size_t n = a.size();
    Mat c(n, std::vector<C>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == C{0.0}) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return c;
}

inline std::vector<C> mat_vec(const Mat& m, const std::vector<C>& v) {
    std::vector<C> out(v.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            out[i] += m[i][j] * v[j];
        }
    }
    return out;
}

/// Matrix of a gate on the qubits targets ++ selectors (local index bit i is
/// that list's entry i).
inline Mat local_matrix(const spq::Gate& g) {
    using spq::GateKind;
    const double t = g.angle;
    const C I{0.0, 1.0};
    switch (g.kind) {
    case GateKind::H: {
        const double s = 1.0 / std::sqrt(2.0);
        return {{s, s}, {s, -s}};
    }
    case GateKind::X:
        return {{0.0, 1.0}, {1.0, 0.0}};
    case GateKind::RX:
        return {{std::cos(t / 2), -I * std::sin(t / 2)}, {-I * std::sin(t / 2), std::cos(t / 2)}};
    case GateKind::RY:
        return {{std::cos(t / 2), -std::sin(t / 2)}, {std::sin(t / 2), std::cos(t / 2)}};
    case GateKind::Phase:
        return {{1.0, 0.0}, {0.0, std::exp(I * t)}};
    case GateKind::PartialSwap: {
        // exp(-i t/2 (XX + YY)) via the Pauli matrices directly.
        Mat xx(4, std::vector<C>(4, 0.0)), yy(4, std::vector<C>(4, 0.0));
        const C x[2][2] = {{0.0, 1.0}, {1.0, 0.0}};
        const C y[2][2] = {{0.0, -I}, {I, 0.0}};
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                xx[r][c] = x[r >> 1][c >> 1] * x[r & 1][c & 1];
                yy[r][c] = y[r >> 1][c >> 1] * y[r & 1][c & 1];
            }
        }
        // (XX+YY)/2 squares to a projector P onto span{01, 10}, so
        // exp(-i t K) = I - P + cos(t) P - i sin(t) K with K = (XX+YY)/2.
        Mat out = identity(4);
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                const C k = 0.5 * (xx[r][c] + yy[r][c]);
                C p = 0.0;
                for (int q = 0; q < 4; ++q) {
                    p += 0.5 * (xx[r][q] + yy[r][q]) * 0.5 * (xx[q][c] + yy[q][c]);
                }
                out[r][c] += (std::cos(t) - 1.0) * p - I * std::sin(t) * k;
            }
        }
        return out;
    }
    case GateKind::DenseUnitary: {
        const std::size_t d = g.matrix->dim();
        Mat m(d, std::vector<C>(d));
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                m[r][c] = (*g.matrix)(r, c);
            }
        }
        return m;
    }
    case GateKind::Diagonal: {
        const std::size_t d = std::size_t{1} << g.targets.size();
        Mat m(d, std::vector<C>(d, 0.0));
        for (std::size_t v = 0; v < d; ++v) {
            m[v][v] = std::exp(I * t * (*g.table)[v]);
        }
        return m;
    }
    case GateKind::MultiplexedRY: {
        const std::size_t d = std::size_t{2} << g.selectors.size();
        Mat m(d, std::vector<C>(d, 0.0));
        for (std::size_t v = 0; v < d / 2; ++v) {
            const double th = t * (*g.table)[v];
            const std::size_t i0 = v << 1, i1 = (v << 1) | 1;
            m[i0][i0] = std::cos(th / 2);
            m[i0][i1] = -std::sin(th / 2);
            m[i1][i0] = std::sin(th / 2);
            m[i1][i1] = std::cos(th / 2);
        }
        return m;
    }
    case GateKind::Reflection0: {
        Mat m = identity(std::size_t{1} << g.targets.size());
        m[0][0] = -1.0;
        return m;
    }
    case GateKind::AncillaPhaseFlip:
        return {{-1.0, 0.0}, {0.0, 1.0}};
    }
    return {};
}

/// Full 2^n matrix of a gate including controls.
inline Mat full_matrix(const spq::Gate& g, unsigned n) {
    std::vector<unsigned> local = g.targets;
    local.insert(local.end(), g.selectors.begin(), g.selectors.end());
    const Mat lm = local_matrix(g);
    const std::size_t dim = std::size_t{1} << n;
    std::uint64_t local_mask = 0;
    for (unsigned q : local) {
        local_mask |= std::uint64_t{1} << q;
    }
    Mat m(dim, std::vector<C>(dim, 0.0));
    for (std::size_t col = 0; col < dim; ++col) {
        bool active = true;
        for (const auto& c : g.controls) {
            if (((col >> c.qubit) & 1U) != (c.on_one ? 1U : 0U)) {
                active = false;
            }
        }
        if (!active) {
            m[col][col] = 1.0;
            continue;
        }
        std::size_t lc = 0;
        for (std::size_t i = 0; i < local.size(); ++i) {
            lc |= ((col >> local[i]) & 1U) << i;
        }
        for (std::size_t lr = 0; lr < lm.size(); ++lr) {
            std::size_t row = col & ~local_mask;
            for (std::size_t i = 0; i < local.size(); ++i) {
                row |= ((lr >> i) & 1U) << local[i];
            }
            m[row][col] = lm[lr][lc];
        }
    }
    return m;
}

inline std::vector<C> run(const std::vector<spq::Gate>& gates, std::vector<C> psi, unsigned n) {
    for (const auto& g : gates) {
        psi = mat_vec(full_matrix(g, n), psi);
    }
    return psi;
}

inline std::vector<C> random_state(unsigned n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    std::vector<C> v(std::size_t{1} << n);
    double norm = 0;
    for (auto& a : v) {
        a = {nd(rng), nd(rng)};
        norm += std::norm(a);
    }
    for (auto& a : v) {
        a /= std::sqrt(norm);
    }
    return v;
}

/// Unit-commitment cost straight from the sum over turbines.
inline double uc_cost(const std::vector<double>& c, double c_r, std::uint64_t y,
                      std::uint64_t xi) {
    double q = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if ((y >> j) & 1U) {
            q += ((xi >> j) & 1U) ? c[j] : c_r;
        }
    }
    return q;
}

/// min over y with popcount(y) = d - x, scanning all 2^n strings.
inline double uc_recourse(const std::vector<double>& c, double c_r, unsigned k,
                          std::uint64_t xi) {
    double best = INFINITY;
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << c.size()); ++y) {
        if (static_cast<unsigned>(std::popcount(y)) == k) {
            best = std::min(best, uc_cost(c, c_r, y, xi));
        }
    }
    return best;
}

/// phi(x) for the uniform distribution.
inline double uc_phi_uniform(const std::vector<double>& c, double c_r, unsigned k) {
    const std::uint64_t s = std::uint64_t{1} << c.size();
    double sum = 0;
    for (std::uint64_t xi = 0; xi < s; ++xi) {
        sum += uc_recourse(c, c_r, k, xi);
    }
    return sum / static_cast<double>(s);
}

} // namespace ref
