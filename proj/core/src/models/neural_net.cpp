#include "spamlab/models/neural_net.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spamlab/rng.hpp"

namespace spamlab {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + e^z), overflow-safe
double softplus(double z) {
    return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

std::vector<std::size_t> layer_sizes(const DnnModel& net) {
    std::vector<std::size_t> sizes{net.dim};
    sizes.insert(sizes.end(), net.config.hidden.begin(), net.config.hidden.end());
    sizes.push_back(1);
    return sizes;
}

// z = a^T W + b for (in x out) weights; `a` may be a sparse input row.
void affine_from_row(const RowView& a, const DenseMatrix& w,
                     const std::vector<double>& b, std::vector<double>& z) {
    z.assign(b.begin(), b.end());
    const std::size_t out = b.size();
    if (a.is_dense()) {
        for (std::size_t i = 0; i < a.dim; ++i) {
            const double ai = a.dense[i];
            if (ai == 0.0) continue;
            const double* wr = w.row(i).data();
            for (std::size_t o = 0; o < out; ++o) z[o] += ai * wr[o];
        }
    } else {
        for (std::size_t e = 0; e < a.indices.size(); ++e) {
            const double ai = a.values[e];
            const double* wr = w.row(a.indices[e]).data();
            for (std::size_t o = 0; o < out; ++o) z[o] += ai * wr[o];
        }
    }
}

void affine(const std::vector<double>& a, const DenseMatrix& w,
            const std::vector<double>& b, std::vector<double>& z) {
    z.assign(b.begin(), b.end());
    const std::size_t out = b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        const double* wr = w.row(i).data();
        for (std::size_t o = 0; o < out; ++o) z[o] += ai * wr[o];
    }
}

}  // namespace

double DnnModel::score(const RowView& x) const {
    detail::check_score_dim(dim, x);
    std::vector<double> a, z;
    for (std::size_t l = 0; l < weights.size(); ++l) {
        if (l == 0)
            affine_from_row(x, weights[l], biases[l], z);
        else
            affine(a, weights[l], biases[l], z);
        if (l + 1 < weights.size()) {
            for (double& v : z) v = std::tanh(v);
            a.swap(z);
        }
    }
    return sigmoid(z[0]);
}

double dnn_loss_and_gradients(const DnnModel& net, const FeatureMatrix& x,
                              std::span<const std::size_t> rows,
                              std::span<const double> targets,
                              const DnnMasks* masks, DnnGradients* grads) {
    if (rows.empty()) throw DataError("dnn loss: empty batch");
    if (rows.size() != targets.size())
        throw DataError("dnn loss: rows and targets disagree");
    const std::size_t layers = net.layer_count();
    const std::size_t hidden = layers - 1;
    if (masks && masks->values.size() != rows.size())
        throw DataError("dnn loss: mask batch size mismatch");

    if (grads) {
        grads->weights.clear();
        grads->biases.clear();
        for (std::size_t l = 0; l < layers; ++l) {
            grads->weights.emplace_back(net.weights[l].rows(), net.weights[l].cols(),
                                        0.0);
            grads->biases.emplace_back(net.biases[l].size(), 0.0);
        }
    }

    // per hidden layer: raw tanh output and post-dropout activation
    std::vector<std::vector<double>> h_raw(hidden), act(hidden);
    std::vector<double> z, delta, delta_prev;

    double total_loss = 0.0;
    for (std::size_t s = 0; s < rows.size(); ++s) {
        const RowView input = x.row(rows[s]);
        detail::check_score_dim(net.dim, input);

        for (std::size_t l = 0; l < hidden; ++l) {
            if (l == 0)
                affine_from_row(input, net.weights[l], net.biases[l], z);
            else
                affine(act[l - 1], net.weights[l], net.biases[l], z);
            h_raw[l].resize(z.size());
            act[l].resize(z.size());
            for (std::size_t u = 0; u < z.size(); ++u) {
                h_raw[l][u] = std::tanh(z[u]);
                const double m = masks ? masks->values[s][l][u] : 1.0;
                act[l][u] = h_raw[l][u] * m;
            }
        }
        const std::size_t last = layers - 1;
        if (hidden == 0)
            affine_from_row(input, net.weights[last], net.biases[last], z);
        else
            affine(act[hidden - 1], net.weights[last], net.biases[last], z);
        const double zout = z[0];
        const double t = targets[s];
        total_loss += softplus(zout) - t * zout;

        if (!grads) continue;

        // output layer: dL/dz_out = sigmoid(z_out) - t
        delta.assign(1, sigmoid(zout) - t);
        for (std::size_t l = layers; l-- > 0;) {
            DenseMatrix& gw = grads->weights[l];
            std::vector<double>& gb = grads->biases[l];
            const std::size_t out = delta.size();
            for (std::size_t o = 0; o < out; ++o) gb[o] += delta[o];

            if (l == 0) {
                if (input.is_dense()) {
                    for (std::size_t i = 0; i < input.dim; ++i) {
                        const double ai = input.dense[i];
                        if (ai == 0.0) continue;
                        double* gr = gw.row(i).data();
                        for (std::size_t o = 0; o < out; ++o) gr[o] += ai * delta[o];
                    }
                } else {
                    for (std::size_t e = 0; e < input.indices.size(); ++e) {
                        const double ai = input.values[e];
                        double* gr = gw.row(input.indices[e]).data();
                        for (std::size_t o = 0; o < out; ++o) gr[o] += ai * delta[o];
                    }
                }
                break;
            }

            const std::vector<double>& a_prev = act[l - 1];
            delta_prev.assign(a_prev.size(), 0.0);
            for (std::size_t i = 0; i < a_prev.size(); ++i) {
                const double* wr = net.weights[l].row(i).data();
                double* gr = gw.row(i).data();
                const double ai = a_prev[i];
                double acc = 0.0;
                for (std::size_t o = 0; o < out; ++o) {
                    gr[o] += ai * delta[o];
                    acc += wr[o] * delta[o];
                }
                delta_prev[i] = acc;
            }
            // back through dropout (the mask multiplies tanh) and tanh
            for (std::size_t u = 0; u < delta_prev.size(); ++u) {
                const double m = masks ? masks->values[s][l - 1][u] : 1.0;
                delta_prev[u] *= m * (1.0 - h_raw[l - 1][u] * h_raw[l - 1][u]);
            }
            delta.swap(delta_prev);
        }
    }

    const double inv = 1.0 / static_cast<double>(rows.size());
    if (grads) {
        for (std::size_t l = 0; l < layers; ++l) {
            for (double& v : grads->weights[l].values()) v *= inv;
            for (double& v : grads->biases[l]) v *= inv;
        }
    }
    return total_loss * inv;
}

DnnModel train_dnn(const FeatureMatrix& x, std::span<const Label> y,
                   const DnnConfig& config) {
    detail::check_training_inputs(x, y);
    if (!(config.learning_rate > 0.0))
        throw ConfigError("train_dnn: learning_rate must be > 0");
    if (!(config.momentum >= 0.0 && config.momentum < 1.0))
        throw ConfigError("train_dnn: momentum must lie in [0, 1)");
    if (!(config.dropout >= 0.0 && config.dropout < 1.0))
        throw ConfigError("train_dnn: dropout must lie in [0, 1)");
    if (config.batch_size == 0) throw ConfigError("train_dnn: batch_size must be >= 1");
    if (config.epochs == 0) throw ConfigError("train_dnn: epochs must be >= 1");
    for (const std::size_t h : config.hidden)
        if (h == 0) throw ConfigError("train_dnn: hidden layer of width 0");

    DnnModel net;
    net.config = config;
    net.dim = x.cols();
    const std::vector<std::size_t> sizes = layer_sizes(net);
    const std::size_t layers = sizes.size() - 1;
    const std::size_t hidden = layers - 1;

    Rng rng(config.seed);
    for (std::size_t l = 0; l < layers; ++l) {
        DenseMatrix w(sizes[l], sizes[l + 1]);
        const double scale = std::sqrt(2.0 / static_cast<double>(sizes[l]));
        for (double& v : w.values()) v = rng.normal() * scale;
        net.weights.push_back(std::move(w));
        net.biases.emplace_back(sizes[l + 1], 0.0);
    }

    DnnGradients velocity;
    for (std::size_t l = 0; l < layers; ++l) {
        velocity.weights.emplace_back(sizes[l], sizes[l + 1], 0.0);
        velocity.biases.emplace_back(sizes[l + 1], 0.0);
    }

    std::vector<std::size_t> order(x.rows());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> targets;
    std::vector<std::size_t> batch;
    DnnGradients grads;
    DnnMasks masks;
    const bool use_dropout = config.dropout > 0.0 && hidden > 0;
    const double keep_inv = 1.0 / (1.0 - config.dropout);

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t start = 0; start < order.size();
             start += config.batch_size) {
            const std::size_t stop =
                std::min(order.size(), start + config.batch_size);
            batch.assign(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(stop));
            targets.resize(batch.size());
            for (std::size_t s = 0; s < batch.size(); ++s)
                targets[s] = y[batch[s]] == Label::spam ? 1.0 : 0.0;

            const DnnMasks* mask_ptr = nullptr;
            if (use_dropout) {
                masks.values.assign(batch.size(), {});
                for (std::size_t s = 0; s < batch.size(); ++s) {
                    masks.values[s].resize(hidden);
                    for (std::size_t l = 0; l < hidden; ++l) {
                        masks.values[s][l].resize(sizes[l + 1]);
                        for (double& m : masks.values[s][l])
                            m = rng.uniform01() < config.dropout ? 0.0 : keep_inv;
                    }
                }
                mask_ptr = &masks;
            }

            const double loss =
                dnn_loss_and_gradients(net, x, batch, targets, mask_ptr, &grads);
            if (!std::isfinite(loss))
                throw NumericError("train_dnn: non-finite loss at epoch " +
                                   std::to_string(epoch + 1));

            for (std::size_t l = 0; l < layers; ++l) {
                auto& wv = velocity.weights[l].values();
                const auto& gw = grads.weights[l].values();
                auto& w = net.weights[l].values();
                for (std::size_t i = 0; i < w.size(); ++i) {
                    wv[i] = config.momentum * wv[i] - config.learning_rate * gw[i];
                    w[i] += wv[i];
                }
                auto& bv = velocity.biases[l];
                const auto& gb = grads.biases[l];
                auto& bb = net.biases[l];
                for (std::size_t i = 0; i < bb.size(); ++i) {
                    bv[i] = config.momentum * bv[i] - config.learning_rate * gb[i];
                    bb[i] += bv[i];
                }
            }
        }
        for (std::size_t l = 0; l < layers; ++l)
            if (!net.weights[l].all_finite())
                throw NumericError("train_dnn: non-finite weights after epoch " +
                                   std::to_string(epoch + 1));
    }
    return net;
}

}  // namespace spamlab
