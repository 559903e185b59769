#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "landscape/core.hpp"
#include "landscape/linalg.hpp"
#include "landscape/testbed/ansatz.hpp"
#include "landscape/testbed/pauli.hpp"

namespace landscape::testbed {

/// 1 - sin(nu |theta|) / (nu |theta|), with value 0 at the origin.
ModelPtr sombrero_loss(double nu = 2.0, std::size_t dimension = 4);

/// Radial profile of the sombrero loss.
double sombrero_radial(double nu, double radius);

/// Radius of the k-th radial critical point (k >= 1) of the sombrero loss:
/// odd k are barriers, even k are ring minima.
double sombrero_critical_radius(double nu, std::size_t k);

ModelPtr constant_loss(double value, std::size_t dimension);

/// 0.5 * (theta - centre)^T H (theta - centre) for symmetric H.
ModelPtr quadratic_loss(const Matrix& hessian, std::vector<double> centre = {});

/// sum_i c_i theta_i + offset.
ModelPtr linear_loss(std::vector<double> coefficients, double offset = 0.0);

/// <gamma, beta| H_C |gamma, beta> for the MaxCut cost sum w_ij Z_i Z_j.
ModelPtr qaoa_maxcut_loss(const WeightedGraph& graph, std::size_t layers,
                          std::size_t max_qubits = kDefaultMaxQubits);

inline constexpr double kDefaultKlEpsilon = 1e-6;

/// KL(p || q_theta) with model probabilities below epsilon clipped to epsilon
/// wherever the target has mass.
double clipped_kl(const DiscreteDistribution& target, const std::vector<double>& model, double epsilon);

class QcbmKlLoss final : public LossModel {
public:
    QcbmKlLoss(AnsatzSpec ansatz, DiscreteDistribution target, double epsilon = kDefaultKlEpsilon);

    const AnsatzSpec& ansatz() const noexcept { return ansatz_; }
    const DiscreteDistribution& target() const noexcept { return target_; }
    double epsilon() const noexcept { return epsilon_; }
    DiscreteDistribution model_distribution(std::span<const double> theta) const;

protected:
    double compute(std::span<const double> theta, std::uint64_t) const override;

private:
    AnsatzSpec ansatz_;
    DiscreteDistribution target_;
    double epsilon_;
};

class PauliExpectationLoss final : public LossModel {
public:
    PauliExpectationLoss(AnsatzSpec ansatz, PauliSum hamiltonian);

    const AnsatzSpec& ansatz() const noexcept { return ansatz_; }
    const PauliSum& hamiltonian() const noexcept { return hamiltonian_; }
    std::vector<double> term_expectations(std::span<const double> theta) const;
    /// Variance of a single-shot estimate of the full sum when every term is
    /// sampled independently: sum_k c_k^2 (1 - <P_k>^2).
    double single_shot_variance(std::span<const double> theta) const;

protected:
    double compute(std::span<const double> theta, std::uint64_t) const override;

private:
    AnsatzSpec ansatz_;
    PauliSum hamiltonian_;
};

std::shared_ptr<QcbmKlLoss> qcbm_kl_loss(AnsatzSpec ansatz, DiscreteDistribution target,
                                         double epsilon = kDefaultKlEpsilon);
std::shared_ptr<PauliExpectationLoss> pauli_expectation_loss(AnsatzSpec ansatz, PauliSum hamiltonian);

/// Finite-shot Pauli loss: each term's expectation is replaced by the mean of
/// `shots` +-1 outcomes drawn with the exact probabilities. The sample stream
/// of call k is seeded from (seed, k), so a run replays exactly from its seed.
class ShotNoisePauliLoss final : public LossModel {
public:
    ShotNoisePauliLoss(std::shared_ptr<const PauliExpectationLoss> exact, std::uint64_t shots_per_term,
                       std::uint64_t seed);
    const PauliExpectationLoss& exact() const noexcept { return *exact_; }

protected:
    double compute(std::span<const double> theta, std::uint64_t call_index) const override;

private:
    std::shared_ptr<const PauliExpectationLoss> exact_;
    std::uint64_t shots_;
    std::uint64_t seed_;
};

/// Finite-shot KL loss: the model distribution is replaced by the empirical
/// frequencies of `shots` draws before the clipped KL is taken.
class ShotNoiseKlLoss final : public LossModel {
public:
    ShotNoiseKlLoss(std::shared_ptr<const QcbmKlLoss> exact, std::uint64_t shots, std::uint64_t seed);
    const QcbmKlLoss& exact() const noexcept { return *exact_; }

protected:
    double compute(std::span<const double> theta, std::uint64_t call_index) const override;

private:
    std::shared_ptr<const QcbmKlLoss> exact_;
    std::uint64_t shots_;
    std::uint64_t seed_;
};

ModelPtr with_shot_noise(std::shared_ptr<const PauliExpectationLoss> exact, std::uint64_t shots_per_term,
                         std::uint64_t seed);
ModelPtr with_shot_noise(std::shared_ptr<const QcbmKlLoss> exact, std::uint64_t shots, std::uint64_t seed);

/// Empirical frequencies of `shots` categorical draws.
std::vector<double> sample_frequencies(const DiscreteDistribution& dist, std::uint64_t shots, std::uint64_t seed);

} // namespace landscape::testbed
