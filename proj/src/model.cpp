#include "spq/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "spq/random.hpp"

namespace spq {

std::vector<unsigned> QubitRange::qubits() const {
    std::vector<unsigned> out(count);
    for (unsigned i = 0; i < count; ++i) {
        out[i] = first + i;
    }
    return out;
}

bool QubitRange::overlaps(const QubitRange& other) const {
    if (count == 0 || other.count == 0) {
        return false;
    }
    return first < other.end() && other.first < end();
}

RegisterLayout RegisterLayout::dqa_only(unsigned n_y, unsigned n_xi) {
    RegisterLayout l;
    l.y = {0, n_y};
    l.xi = {n_y, n_xi};
    return l;
}

RegisterLayout RegisterLayout::with_qae(unsigned n_y, unsigned n_xi, unsigned m) {
    RegisterLayout l = dqa_only(n_y, n_xi);
    l.ancilla = n_y + n_xi;
    l.estimate = {n_y + n_xi + 1, m};
    return l;
}

unsigned RegisterLayout::system_qubits() const {
    return y.count + xi.count + (ancilla ? 1U : 0U);
}

unsigned RegisterLayout::total_qubits() const {
    unsigned top = std::max(y.end(), xi.end());
    if (ancilla) {
        top = std::max(top, *ancilla + 1);
    }
    return std::max(top, estimate.end());
}

std::vector<unsigned> RegisterLayout::system_qubit_list() const {
    auto out = y.qubits();
    const auto xq = xi.qubits();
    out.insert(out.end(), xq.begin(), xq.end());
    if (ancilla) {
        out.push_back(*ancilla);
    }
    return out;
}

void RegisterLayout::validate() const {
    const QubitRange anc = ancilla ? QubitRange{*ancilla, 1} : QubitRange{};
    if (y.overlaps(xi) || y.overlaps(anc) || y.overlaps(estimate) || xi.overlaps(anc) ||
        xi.overlaps(estimate) || anc.overlaps(estimate)) {
        throw std::invalid_argument("register layout: ranges overlap");
    }
}

void UnitCommitmentModel::validate() const {
    if (c.size() != n_y) {
        throw std::invalid_argument("model: expected " + std::to_string(n_y) +
                                    " turbine costs, got " + std::to_string(c.size()));
    }
    if (n_y == 0 || n_y > 12) {
        throw std::invalid_argument("model: n_y must be in [1, 12]");
    }
    if (!(c_x < c_r)) {
        throw std::invalid_argument("model: recourse cost must exceed gas cost");
    }
    for (double cj : c) {
        if (!(cj > 0.0 && cj < c_x)) {
            throw std::invalid_argument("model: turbine costs must lie in (0, c_x)");
        }
    }
}

UnitCommitmentModel UnitCommitmentModel::generate(unsigned n_y, std::uint64_t seed, double c_x,
                                                  double c_r, double cost_lo, double cost_hi) {
    Rng rng(seed);
    UnitCommitmentModel m;
    m.n_y = n_y;
    m.c_x = c_x;
    m.c_r = c_r;
    m.d = n_y;
    m.c.resize(n_y);
    for (auto& cj : m.c) {
        cj = cost_lo + (cost_hi - cost_lo) * uniform01(rng);
    }
    m.validate();
    return m;
}

DiscreteDistribution::DiscreteDistribution(unsigned n_xi, std::vector<Scenario> entries)
    : n_xi_(n_xi), entries_(std::move(entries)) {
    if (n_xi > 20) {
        throw std::invalid_argument("distribution: n_xi too large");
    }
    std::set<Bits> seen;
    double total = 0.0;
    for (const auto& e : entries_) {
        if (e.xi >> n_xi != 0) {
            throw std::invalid_argument("distribution: scenario wider than n_xi");
        }
        if (!seen.insert(e.xi).second) {
            throw std::invalid_argument("distribution: duplicate scenario");
        }
        if (!(e.probability >= 0.0)) {
            throw std::invalid_argument("distribution: negative probability");
        }
        total += e.probability;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("distribution: probabilities sum to " +
                                    std::to_string(total));
    }
}

DiscreteDistribution DiscreteDistribution::uniform(unsigned n_xi) {
    const Bits count = Bits{1} << n_xi;
    std::vector<Scenario> entries(count);
    for (Bits w = 0; w < count; ++w) {
        entries[w] = {w, 1.0 / static_cast<double>(count)};
    }
    return DiscreteDistribution(n_xi, std::move(entries));
}

DiscreteDistribution DiscreteDistribution::point_mass(unsigned n_xi, Bits xi) {
    return DiscreteDistribution(n_xi, {{xi, 1.0}});
}

double DiscreteDistribution::probability(Bits xi) const {
    for (const auto& e : entries_) {
        if (e.xi == xi) {
            return e.probability;
        }
    }
    return 0.0;
}

bool DiscreteDistribution::is_uniform() const {
    const Bits count = Bits{1} << n_xi_;
    if (entries_.size() != count) {
        return false;
    }
    const double p = 1.0 / static_cast<double>(count);
    return std::all_of(entries_.begin(), entries_.end(),
                       [p](const Scenario& e) { return e.probability == p; });
}

double second_stage_cost_unchecked(const UnitCommitmentModel& model, Bits y, Bits xi) {
    double q = 0.0;
    for (unsigned j = 0; j < model.n_y; ++j) {
        if ((y >> j) & 1U) {
            q += ((xi >> j) & 1U) ? model.c[j] : model.c_r;
        }
    }
    return q;
}

double second_stage_cost(const UnitCommitmentModel& model, unsigned x, Bits y, Bits xi) {
    if (x > model.d || static_cast<unsigned>(std::popcount(y)) != model.d - x ||
        (y >> model.n_y) != 0) {
        throw InfeasibleDecision("second stage: y violates 1^T y + x = d");
    }
    return second_stage_cost_unchecked(model, y, xi);
}

Bounds cost_bounds(const UnitCommitmentModel& model, unsigned x) {
    if (x > model.d) {
        throw std::invalid_argument("bounds: x exceeds demand");
    }
    return {0.0, model.c_r * static_cast<double>(model.d - x)};
}

std::vector<Bits> strings_of_weight(unsigned n, unsigned k) {
    std::vector<Bits> out;
    if (k > n) {
        return out;
    }
    for (Bits y = 0; y < (Bits{1} << n); ++y) {
        if (static_cast<unsigned>(std::popcount(y)) == k) {
            out.push_back(y);
        }
    }
    return out;
}

RecourseSolution brute_force_recourse(const UnitCommitmentModel& model, unsigned x, Bits xi) {
    if (x > model.d) {
        throw std::invalid_argument("recourse: x exceeds demand, no feasible y");
    }
    const auto feasible = strings_of_weight(model.n_y, model.d - x);
    if (feasible.empty()) {
        throw std::invalid_argument("recourse: no feasible y");
    }
    RecourseSolution best{feasible.front(), second_stage_cost(model, x, feasible.front(), xi)};
    for (Bits y : feasible) {
        const double q = second_stage_cost(model, x, y, xi);
        if (q < best.cost) {
            best = {y, q};
        }
    }
    return best;
}

double expected_value_exact(const UnitCommitmentModel& model, unsigned x,
                            const DiscreteDistribution& dist) {
    double phi = 0.0;
    for (const auto& e : dist.entries()) {
        phi += e.probability * brute_force_recourse(model, x, e.xi).cost;
    }
    return phi;
}

double objective_exact(const UnitCommitmentModel& model, unsigned x,
                       const DiscreteDistribution& dist) {
    return model.c_x * static_cast<double>(x) + expected_value_exact(model, x, dist);
}

CostTable CostTable::for_unit_commitment(const UnitCommitmentModel& model, unsigned x) {
    if (x > model.d) {
        throw std::invalid_argument("cost table: x exceeds demand");
    }
    CostTable t;
    t.n_y = model.n_y;
    t.n_xi = model.n_y;
    const Bits dim_y = Bits{1} << t.n_y;
    t.values.resize(dim_y * dim_y);
    for (Bits xi = 0; xi < dim_y; ++xi) {
        for (Bits y = 0; y < dim_y; ++y) {
            t.values[y | (xi << t.n_y)] = second_stage_cost_unchecked(model, y, xi);
        }
    }
    t.feasible = strings_of_weight(model.n_y, model.d - x);
    return t;
}

RecourseSolution brute_force_recourse(const CostTable& table, Bits xi) {
    if (table.feasible.empty()) {
        throw std::invalid_argument("recourse: empty feasible set");
    }
    RecourseSolution best{table.feasible.front(), table.at(table.feasible.front(), xi)};
    for (Bits y : table.feasible) {
        const double q = table.at(y, xi);
        if (q < best.cost) {
            best = {y, q};
        }
    }
    return best;
}

double expected_value_exact(const CostTable& table, const DiscreteDistribution& dist) {
    double phi = 0.0;
    for (const auto& e : dist.entries()) {
        phi += e.probability * brute_force_recourse(table, e.xi).cost;
    }
    return phi;
}

double diagonal_cost_lookup(const CostTable& table, const RegisterLayout& layout, Index basis) {
    return table.at(layout.y.extract(basis), layout.xi.extract(basis));
}

GenericDiagonalProblem GenericDiagonalProblem::from_function(
    unsigned n_y, unsigned n_xi, const std::function<double(Bits, Bits)>& cost, MixerKind mixer,
    unsigned hamming_weight) {
    GenericDiagonalProblem p;
    p.mixer = mixer;
    p.hamming_weight = hamming_weight;
    p.table.n_y = n_y;
    p.table.n_xi = n_xi;
    p.table.values.resize(std::size_t{1} << (n_y + n_xi));
    for (Bits xi = 0; xi < (Bits{1} << n_xi); ++xi) {
        for (Bits y = 0; y < (Bits{1} << n_y); ++y) {
            p.table.values[y | (xi << n_y)] = cost(y, xi);
        }
    }
    if (mixer == MixerKind::TransverseField) {
        p.table.feasible.resize(std::size_t{1} << n_y);
        for (Bits y = 0; y < p.table.feasible.size(); ++y) {
            p.table.feasible[y] = y;
        }
    } else {
        p.table.feasible = strings_of_weight(n_y, hamming_weight);
    }
    p.validate();
    return p;
}

GenericDiagonalProblem GenericDiagonalProblem::zz_pair() {
    return from_function(1, 1, [](Bits y, Bits xi) {
        const double zy = (y & 1U) ? -1.0 : 1.0;
        const double zx = (xi & 1U) ? -1.0 : 1.0;
        return zy * zx;
    });
}

GenericDiagonalProblem GenericDiagonalProblem::sign_flip_family(unsigned n_y, unsigned n_xi,
                                                                std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> h(n_y);
    std::vector<double> coupling(n_y * n_y, 0.0);
    for (auto& v : h) {
        v = 2.0 * uniform01(rng) - 1.0;
    }
    for (unsigned j = 0; j < n_y; ++j) {
        for (unsigned k = j + 1; k < n_y; ++k) {
            coupling[j * n_y + k] = 2.0 * uniform01(rng) - 1.0;
        }
    }
    auto base = [=](Bits y) {
        double f = 0.0;
        for (unsigned j = 0; j < n_y; ++j) {
            const double zj = ((y >> j) & 1U) ? -1.0 : 1.0;
            f += h[j] * zj;
            for (unsigned k = j + 1; k < n_y; ++k) {
                const double zk = ((y >> k) & 1U) ? -1.0 : 1.0;
                f += coupling[j * n_y + k] * zj * zk;
            }
        }
        return f;
    };
    return from_function(n_y, n_xi, [=](Bits y, Bits xi) {
        Bits mask = 0;
        for (unsigned j = 0; j < n_y; ++j) {
            mask |= ((xi >> (j % n_xi)) & 1U) << j;
        }
        return base(y ^ mask);
    });
}

void GenericDiagonalProblem::validate() const {
    if (table.values.size() != (std::size_t{1} << (table.n_y + table.n_xi))) {
        throw std::invalid_argument("generic problem: cost table size mismatch");
    }
    for (double v : table.values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("generic problem: non-finite cost");
        }
    }
    if (table.feasible.empty()) {
        throw std::invalid_argument("generic problem: empty feasible set");
    }
    if (mixer == MixerKind::HammingWeight && hamming_weight > table.n_y) {
        throw std::invalid_argument("generic problem: Hamming weight exceeds n_y");
    }
}

} // namespace spq
