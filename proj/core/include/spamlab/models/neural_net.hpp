#pragma once

#include <cstdint>
#include <vector>

#include "spamlab/dense_matrix.hpp"
#include "spamlab/models/model.hpp"

namespace spamlab {

struct DnnConfig {
    std::vector<std::size_t> hidden = {256, 128, 64, 32, 16};
    double dropout = 0.3;        // drop probability on hidden activations; [0, 1)
    double learning_rate = 0.01; // > 0
    double momentum = 0.9;       // [0, 1)
    std::size_t batch_size = 32; // >= 1
    std::size_t epochs = 30;     // >= 1
    std::uint64_t seed = 42;     // init, shuffling and dropout masks
};

// Feed-forward net: input -> hidden... -> 1, tanh hidden activations,
// sigmoid output trained with binary cross-entropy. Training is minibatch
// SGD with classic momentum (v <- momentum*v - lr*grad; param += v) and
// inverted dropout on hidden activations (training only). Weights start
// He-style: N(0, 2/fan_in), biases at zero. Fully deterministic for a fixed
// seed. Throws NumericError if the loss or a parameter goes non-finite.
// score() is the forward pass without dropout: P(spam | x).
struct DnnModel final : Model {
    DnnConfig config;
    std::size_t dim = 0;
    // layer l maps sizes[l] -> sizes[l+1]: weights[l] is (in x out) row-major,
    // so row i holds the fan-out of input unit i (contiguous for sparse rows)
    std::vector<DenseMatrix> weights;
    std::vector<std::vector<double>> biases;

    std::size_t layer_count() const { return weights.size(); }

    ModelKind kind() const override { return ModelKind::dnn; }
    std::size_t input_dim() const override { return dim; }
    double score(const RowView& x) const override;
    double default_threshold() const override { return 0.5; }
};

struct DnnGradients {
    std::vector<DenseMatrix> weights;
    std::vector<std::vector<double>> biases;
};

// Per-sample, per-hidden-layer activation multipliers (0 or 1/keep for
// inverted dropout; empty masks mean no dropout). Shapes must match the
// batch and the hidden layers.
struct DnnMasks {
    std::vector<std::vector<std::vector<double>>> values;
};

// Mean binary cross-entropy of the batch plus (optionally) its analytic
// gradients; the exact function optimized by train_dnn, exposed so the
// gradients can be checked against finite differences.
double dnn_loss_and_gradients(const DnnModel& net, const FeatureMatrix& x,
                              std::span<const std::size_t> rows,
                              std::span<const double> targets,
                              const DnnMasks* masks, DnnGradients* grads);

DnnModel train_dnn(const FeatureMatrix& x, std::span<const Label> y,
                   const DnnConfig& config = {});

}  // namespace spamlab
