#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>
#include <random>

#include "reference.hpp"
#include "spq/statevector.hpp"

using namespace spq;
using std::numbers::pi;

namespace {

StateVector from(std::vector<Complex> v) { return StateVector::from_amplitudes(std::move(v)); }

double max_diff(const StateVector& s, const std::vector<Complex>& v) {
    double d = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        d = std::max(d, std::abs(s[i] - v[i]));
    }
    return d;
}

std::shared_ptr<const std::vector<double>> random_table(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    auto t = std::make_shared<std::vector<double>>(n);
    for (auto& x : *t) {
        x = u(rng);
    }
    return t;
}

std::shared_ptr<const DenseMatrix> random_unitary(unsigned k, std::mt19937_64& rng) {
    // Gram-Schmidt on a random complex matrix.
    const std::size_t d = std::size_t{1} << k;
    std::normal_distribution<double> nd;
    std::vector<std::vector<Complex>> cols(d, std::vector<Complex>(d));
    for (std::size_t c = 0; c < d; ++c) {
        for (auto& x : cols[c]) {
            x = {nd(rng), nd(rng)};
        }
        for (std::size_t p = 0; p < c; ++p) {
            Complex dot = 0;
            for (std::size_t r = 0; r < d; ++r) {
                dot += std::conj(cols[p][r]) * cols[c][r];
            }
            for (std::size_t r = 0; r < d; ++r) {
                cols[c][r] -= dot * cols[p][r];
            }
        }
        double n = 0;
        for (auto& x : cols[c]) {
            n += std::norm(x);
        }
        for (auto& x : cols[c]) {
            x /= std::sqrt(n);
        }
    }
    std::vector<Complex> m(d * d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            m[r * d + c] = cols[c][r];
        }
    }
    return make_unitary(d, std::move(m));
}

// Random gate of any kind on n qubits, with random controls.
Gate random_gate(unsigned n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ang(-pi, pi);
    std::vector<unsigned> perm(n);
    std::iota(perm.begin(), perm.end(), 0U);
    std::shuffle(perm.begin(), perm.end(), rng);
    const int kind = static_cast<int>(rng() % 11);
    Gate g;
    unsigned used = 0;
    switch (kind) {
    case 0: g = gates::h(perm[0]); used = 1; break;
    case 1: g = gates::x(perm[0]); used = 1; break;
    case 2: g = gates::rx(perm[0], ang(rng)); used = 1; break;
    case 3: g = gates::ry(perm[0], ang(rng)); used = 1; break;
    case 4: g = gates::phase(perm[0], ang(rng)); used = 1; break;
    case 5: g = gates::partial_swap(perm[0], perm[1], ang(rng)); used = 2; break;
    case 6: g = gates::dense({perm[0], perm[1]}, random_unitary(2, rng)); used = 2; break;
    case 7: g = gates::diagonal({perm[0], perm[1], perm[2]}, random_table(8, rng), ang(rng)); used = 3; break;
    case 8: g = gates::multiplexed_ry(perm[0], {perm[1], perm[2]}, random_table(4, rng), 1.3); used = 3; break;
    case 9: g = gates::reflection_zero({perm[0], perm[1]}); used = 2; break;
    default: g = gates::ancilla_phase_flip(perm[0]); used = 1; break;
    }
    const unsigned n_ctrl = static_cast<unsigned>(rng() % 3);
    for (unsigned c = 0; c < n_ctrl && used + c < n; ++c) {
        g.controls.push_back({perm[used + c], (rng() & 1U) != 0});
    }
    return g;
}

} // namespace

TEST(StateVector, StartsInZero) {
    StateVector s(3);
    EXPECT_EQ(s.size(), 8U);
    EXPECT_EQ(s[0], Complex(1.0));
    EXPECT_NEAR(s.norm(), 1.0, 1e-15);
}

TEST(StateVector, RejectsBadConstruction) {
    EXPECT_THROW(StateVector(kMaxQubits + 1), std::length_error);
    EXPECT_THROW(from({1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(from({1.0, 0.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(StateVector::basis(2, 4), std::out_of_range);
}

TEST(Apply, HadamardOnZero) {
    StateVector s(1);
    apply(s, gates::h(0));
    EXPECT_NEAR(std::abs(s[0] - 1 / std::sqrt(2.0)), 0, 1e-15);
    EXPECT_NEAR(std::abs(s[1] - 1 / std::sqrt(2.0)), 0, 1e-15);
}

TEST(Apply, PartialSwapQuarterTurn) {
    // |01> has qubit 0 set: index 1.
    auto s = StateVector::basis(2, 1);
    apply(s, gates::partial_swap(0, 1, pi / 2));
    EXPECT_NEAR(std::abs(s[2] - Complex(0, -1)), 0, 1e-15);
    EXPECT_NEAR(std::abs(s[1]), 0, 1e-15);
}

TEST(Apply, PartialSwapLeavesEqualBitsAlone) {
    for (Index b : {Index{0}, Index{3}}) {
        auto s = StateVector::basis(2, b);
        apply(s, gates::partial_swap(0, 1, 0.9));
        EXPECT_NEAR(std::abs(s[b] - 1.0), 0, 1e-15);
    }
}

TEST(Apply, ReflectionZeroFlipsOnlyAllZeros) {
    const double r = 1 / std::sqrt(2.0);
    auto s = from({r, r, 0, 0});
    apply(s, gates::reflection_zero({0, 1}));
    EXPECT_NEAR(s[0].real(), -r, 1e-15);
    EXPECT_NEAR(s[1].real(), r, 1e-15);
}

TEST(Apply, RejectsOutOfRange) {
    StateVector s(2);
    EXPECT_THROW(apply(s, gates::h(2)), std::out_of_range);
    EXPECT_THROW(apply(s, gates::cx(0, 0)), std::invalid_argument);
}

TEST(Apply, EveryKindMatchesFullMatrix) {
    std::mt19937_64 rng(42);
    const unsigned n = 5;
    for (int trial = 0; trial < 400; ++trial) {
        const Gate g = random_gate(n, rng);
        const auto psi = ref::random_state(n, rng);
        auto s = from(psi);
        apply(s, g);
        const auto expected = ref::mat_vec(ref::full_matrix(g, n), psi);
        ASSERT_LT(max_diff(s, expected), 1e-12) << to_string(g.kind) << " trial " << trial;
        ASSERT_NEAR(s.norm(), 1.0, 1e-10);
    }
}

TEST(ApplySequence, EmptyIsIdentity) {
    std::mt19937_64 rng(1);
    const auto psi = ref::random_state(3, rng);
    auto s = from(psi);
    apply_sequence(s, OperatorSequence{});
    EXPECT_LT(max_diff(s, psi), 1e-15);
}

TEST(ApplySequence, AdjointOfRyIsNegativeAngle) {
    std::mt19937_64 rng(2);
    const auto psi = ref::random_state(1, rng);
    OperatorSequence seq;
    seq.append(gates::ry(0, 0.8));
    auto a = from(psi);
    apply_sequence(a, seq, Direction::Adjoint);
    auto b = from(psi);
    apply(b, gates::ry(0, -0.8));
    EXPECT_LT(max_abs_difference(a, b), 1e-15);
}

TEST(ApplySequence, ForwardThenAdjointRestoresState) {
    std::mt19937_64 rng(3);
    for (unsigned n = 3; n <= 8; ++n) {
        OperatorSequence seq;
        for (int i = 0; i < 100; ++i) {
            seq.append(random_gate(n, rng));
        }
        const auto psi = ref::random_state(n, rng);
        auto s = from(psi);
        apply_sequence(s, seq);
        apply_sequence(s, seq, Direction::Adjoint);
        EXPECT_LT(max_diff(s, psi), 1e-9) << "n=" << n;
        EXPECT_NEAR(s.norm(), 1.0, 1e-10);
    }
}

TEST(ApplyControlled, ControlOffLeavesStateUnchanged) {
    std::mt19937_64 rng(4);
    OperatorSequence seq;
    for (int i = 0; i < 20; ++i) {
        seq.append(random_gate(3, rng));
    }
    // Control qubit 3 in |0>.
    auto psi = ref::random_state(3, rng);
    psi.resize(16, 0.0);
    auto s = from(psi);
    apply_controlled_sequence(s, seq, 3, 2);
    EXPECT_LT(max_diff(s, psi), 1e-15);
}

TEST(ApplyControlled, ControlOnMatchesPlainSequence) {
    std::mt19937_64 rng(5);
    OperatorSequence seq;
    for (int i = 0; i < 30; ++i) {
        seq.append(random_gate(4, rng));
    }
    const auto psi = ref::random_state(4, rng);
    auto plain = from(psi);
    apply_sequence(plain, seq);
    std::vector<Complex> lifted(32, 0.0);
    for (std::size_t i = 0; i < 16; ++i) {
        lifted[i | 16] = psi[i];
    }
    auto s = from(lifted);
    apply_controlled_sequence(s, seq, 4, 1);
    for (std::size_t i = 0; i < 16; ++i) {
        ASSERT_NEAR(std::abs(s[i | 16] - plain[i]), 0.0, 1e-10);
    }
}

TEST(ApplyControlled, RepetitionsCompose) {
    std::mt19937_64 rng(6);
    const auto psi = ref::random_state(2, rng);
    OperatorSequence seq;
    seq.append(gates::phase(0, pi / 4));
    auto a = from(psi);
    apply_controlled_sequence(a, seq, 1, 2);
    // Phase(pi/4)^2 = Phase(pi/2), controlled on qubit 1.
    const auto expected =
        ref::mat_vec(ref::full_matrix(with_control(gates::phase(0, pi / 2), {1}), 2), psi);
    EXPECT_LT(max_diff(a, expected), 1e-14);
}

TEST(ApplyControlled, RejectsCollision) {
    OperatorSequence seq;
    seq.append(gates::h(0));
    StateVector s(2);
    EXPECT_THROW(apply_controlled_sequence(s, seq, 0, 1), std::invalid_argument);
}

TEST(Measurement, BasisStateIsDeterministic) {
    const auto s = StateVector::basis(3, 0b101);
    Rng rng(7);
    const std::vector<unsigned> q = {0, 1, 2};
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(measure_register(s, q, rng), 0b101U);
    }
}

TEST(Measurement, PlusStateFrequency) {
    StateVector s(1);
    apply(s, gates::h(0));
    Rng rng(8);
    const std::vector<unsigned> q = {0};
    const auto samples = sample_register(s, q, 100000, rng);
    const double f = std::count(samples.begin(), samples.end(), Index{1}) / 1e5;
    EXPECT_NEAR(f, 0.5, 0.01);
}

TEST(Measurement, MarginalProbability) {
    StateVector s(2);
    apply(s, gates::h(0));
    apply(s, gates::h(1));
    EXPECT_NEAR(marginal_probability(s, 0, 1), 0.5, 1e-15);
    EXPECT_NEAR(marginal_probability(s, 1, 0), 0.5, 1e-15);
    const auto one = StateVector::basis(1, 1);
    EXPECT_DOUBLE_EQ(marginal_probability(one, 0, 1), 1.0);
}

TEST(Measurement, SamplingMatchesMarginalsWithinFourSigma) {
    std::mt19937_64 gen(9);
    const auto s = from(ref::random_state(4, gen));
    Rng rng(10);
    const std::vector<unsigned> q = {2, 0};
    const std::size_t shots = 50000;
    const auto samples = sample_register(s, q, shots, rng);
    const auto dist = register_distribution(s, q);
    for (Index v = 0; v < 4; ++v) {
        const double p = dist[v];
        const double f = std::count(samples.begin(), samples.end(), v) / double(shots);
        EXPECT_LE(std::abs(f - p), 4 * std::sqrt(p * (1 - p) / shots) + 1e-12);
    }
}

TEST(Measurement, DoesNotCollapse) {
    StateVector s(1);
    apply(s, gates::h(0));
    const auto before = s;
    Rng rng(11);
    const std::vector<unsigned> q = {0};
    measure_register(s, q, rng);
    EXPECT_LT(max_abs_difference(s, before), 1e-300);
}

TEST(Bits, GatherScatterRoundTrip) {
    const std::vector<unsigned> q = {4, 1, 6};
    for (Index v = 0; v < 8; ++v) {
        EXPECT_EQ(gather_bits(scatter_bits(v, q), q), v);
    }
    EXPECT_EQ(gather_bits(0b0010010, q), 0b011U);
}

TEST(Overlap, InnerProductAndFidelity) {
    StateVector a(1);
    StateVector b(1);
    apply(b, gates::h(0));
    EXPECT_NEAR(fidelity(a, b), 0.5, 1e-15);
    EXPECT_NEAR(std::abs(inner_product(b, b) - 1.0), 0.0, 1e-15);
}
