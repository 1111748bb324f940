#pragma once

#include <cstdint>
#include <vector>

#include "spamlab/models/model.hpp"

namespace spamlab {

struct SvmConfig {
    double c = 1.0;        // box constraint; must be > 0
    double tol = 1e-4;     // stop when the max projected-gradient violation drops below
    std::size_t max_epochs = 1000;
    std::uint64_t seed = 42;  // epoch-wise coordinate order shuffle
    // When set, receives the dual objective after every epoch (testing hook).
    std::vector<double>* objective_trace = nullptr;
};

// Linear SVM with L1 hinge loss trained by dual coordinate descent on
// ham -> -1 / spam -> +1 targets. The bias is an augmented constant-1
// feature (and is therefore regularized). score(x) = w.x + bias; the
// decision threshold is 0.
struct SvmModel final : Model {
    std::vector<double> w;
    double bias = 0.0;
    double c = 1.0;
    bool converged = false;
    std::size_t epochs_run = 0;
    double dual_objective = 0.0;
    double primal_objective = 0.0;

    ModelKind kind() const override { return ModelKind::svm; }
    std::size_t input_dim() const override { return w.size(); }
    double score(const RowView& x) const override;
    double default_threshold() const override { return 0.0; }
};

SvmModel train_svm(const FeatureMatrix& x, std::span<const Label> y,
                   const SvmConfig& config = {});

}  // namespace spamlab
