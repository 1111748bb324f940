#include "spamlab/models/store.hpp"

#include <fstream>

#include <json.hpp>

#include "spamlab/models/decision_tree.hpp"
#include "spamlab/models/knn.hpp"
#include "spamlab/models/lda.hpp"
#include "spamlab/models/naive_bayes.hpp"
#include "spamlab/models/neural_net.hpp"
#include "spamlab/models/svm.hpp"

namespace spamlab {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

json matrix_to_json(const FeatureMatrix& m) {
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    if (m.is_dense()) {
        j["storage"] = "dense";
        j["values"] = m.raw_values();
    } else {
        j["storage"] = "sparse";
        j["indptr"] = m.raw_indptr();
        j["indices"] = m.raw_indices();
        j["values"] = m.raw_values();
    }
    return j;
}

FeatureMatrix matrix_from_json(const json& j) {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    if (j.at("storage") == "dense")
        return FeatureMatrix::dense(rows, cols, j.at("values").get<std::vector<double>>());
    return FeatureMatrix::sparse(rows, cols,
                                 j.at("indptr").get<std::vector<std::size_t>>(),
                                 j.at("indices").get<std::vector<std::size_t>>(),
                                 j.at("values").get<std::vector<double>>());
}

json dense_to_json(const DenseMatrix& m) {
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"values", m.values()}};
}

DenseMatrix dense_from_json(const json& j) {
    DenseMatrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    auto values = j.at("values").get<std::vector<double>>();
    if (values.size() != m.rows() * m.cols())
        throw DataError("model file: dense matrix size mismatch");
    m.values() = std::move(values);
    return m;
}

std::vector<Label> labels_from_json(const json& j) {
    std::vector<Label> out;
    for (const auto& v : j)
        out.push_back(v.get<int>() != 0 ? Label::spam : Label::ham);
    return out;
}

json labels_to_json(const std::vector<Label>& labels) {
    json j = json::array();
    for (const Label l : labels) j.push_back(l == Label::spam ? 1 : 0);
    return j;
}

json serialize(const Model& model) {
    json hyper, params;
    if (const auto* nb = dynamic_cast<const NbModel*>(&model)) {
        hyper["variant"] =
            nb->variant == NbVariant::multinomial ? "multinomial" : "gaussian";
        hyper["alpha"] = nb->alpha;
        hyper["var_floor"] = nb->var_floor;
        params["dim"] = nb->dim;
        params["log_prior_ham"] = nb->log_prior_ham;
        params["log_prior_spam"] = nb->log_prior_spam;
        if (nb->variant == NbVariant::multinomial) {
            params["log_cond_ham"] = nb->log_cond_ham;
            params["log_cond_spam"] = nb->log_cond_spam;
        } else {
            params["mean_ham"] = nb->mean_ham;
            params["mean_spam"] = nb->mean_spam;
            params["var_ham"] = nb->var_ham;
            params["var_spam"] = nb->var_spam;
        }
    } else if (const auto* knn = dynamic_cast<const KnnModel*>(&model)) {
        hyper["k"] = knn->k;
        params["train_x"] = matrix_to_json(knn->train_x);
        params["train_y"] = labels_to_json(knn->train_y);
    } else if (const auto* svm = dynamic_cast<const SvmModel*>(&model)) {
        hyper["c"] = svm->c;
        params["w"] = svm->w;
        params["bias"] = svm->bias;
        params["converged"] = svm->converged;
        params["epochs_run"] = svm->epochs_run;
        params["dual_objective"] = svm->dual_objective;
        params["primal_objective"] = svm->primal_objective;
    } else if (const auto* lda = dynamic_cast<const LdaModel*>(&model)) {
        params["w"] = lda->w;
        params["mean_spam_z"] = lda->mean_spam_z;
        params["mean_ham_z"] = lda->mean_ham_z;
        params["var_z"] = lda->var_z;
        params["log_prior_spam"] = lda->log_prior_spam;
        params["log_prior_ham"] = lda->log_prior_ham;
    } else if (const auto* dt = dynamic_cast<const DtModel*>(&model)) {
        hyper["max_depth"] = dt->config.max_depth;
        hyper["min_samples_split"] = dt->config.min_samples_split;
        params["dim"] = dt->dim;
        json nodes = json::array();
        for (const DtNode& nd : dt->nodes) {
            json n;
            n["feature"] =
                nd.is_leaf() ? -1 : static_cast<long long>(nd.feature);
            n["threshold"] = nd.threshold;
            n["left"] = nd.left;
            n["right"] = nd.right;
            n["spam_fraction"] = nd.spam_fraction;
            nodes.push_back(std::move(n));
        }
        params["nodes"] = std::move(nodes);
    } else if (const auto* dnn = dynamic_cast<const DnnModel*>(&model)) {
        hyper["hidden"] = dnn->config.hidden;
        hyper["dropout"] = dnn->config.dropout;
        hyper["learning_rate"] = dnn->config.learning_rate;
        hyper["momentum"] = dnn->config.momentum;
        hyper["batch_size"] = dnn->config.batch_size;
        hyper["epochs"] = dnn->config.epochs;
        hyper["seed"] = dnn->config.seed;
        params["dim"] = dnn->dim;
        json weights = json::array();
        for (const DenseMatrix& w : dnn->weights) weights.push_back(dense_to_json(w));
        params["weights"] = std::move(weights);
        params["biases"] = dnn->biases;
    } else {
        throw DataError("model_to_json: unknown model type");
    }
    return json{{"schema_version", kSchemaVersion},
                {"model_kind", model_kind_name(model.kind())},
                {"hyperparameters", std::move(hyper)},
                {"parameters", std::move(params)}};
}

std::unique_ptr<Model> deserialize(const json& j) {
    const int version = j.at("schema_version").get<int>();
    if (version != kSchemaVersion)
        throw DataError("model file: unsupported schema_version " +
                        std::to_string(version));
    const std::string kind = j.at("model_kind").get<std::string>();
    const json& hyper = j.at("hyperparameters");
    const json& params = j.at("parameters");

    if (kind == "nb") {
        auto m = std::make_unique<NbModel>();
        m->variant = hyper.at("variant") == "multinomial" ? NbVariant::multinomial
                                                          : NbVariant::gaussian;
        m->alpha = hyper.at("alpha").get<double>();
        m->var_floor = hyper.at("var_floor").get<double>();
        m->dim = params.at("dim").get<std::size_t>();
        m->log_prior_ham = params.at("log_prior_ham").get<double>();
        m->log_prior_spam = params.at("log_prior_spam").get<double>();
        if (m->variant == NbVariant::multinomial) {
            m->log_cond_ham = params.at("log_cond_ham").get<std::vector<double>>();
            m->log_cond_spam = params.at("log_cond_spam").get<std::vector<double>>();
        } else {
            m->mean_ham = params.at("mean_ham").get<std::vector<double>>();
            m->mean_spam = params.at("mean_spam").get<std::vector<double>>();
            m->var_ham = params.at("var_ham").get<std::vector<double>>();
            m->var_spam = params.at("var_spam").get<std::vector<double>>();
        }
        return m;
    }
    if (kind == "knn") {
        auto m = std::make_unique<KnnModel>();
        m->k = hyper.at("k").get<std::size_t>();
        m->train_x = matrix_from_json(params.at("train_x"));
        m->train_y = labels_from_json(params.at("train_y"));
        m->train_norms.resize(m->train_x.rows());
        for (std::size_t i = 0; i < m->train_x.rows(); ++i)
            m->train_norms[i] = l2_norm(m->train_x.row(i));
        return m;
    }
    if (kind == "svm") {
        auto m = std::make_unique<SvmModel>();
        m->c = hyper.at("c").get<double>();
        m->w = params.at("w").get<std::vector<double>>();
        m->bias = params.at("bias").get<double>();
        m->converged = params.at("converged").get<bool>();
        m->epochs_run = params.at("epochs_run").get<std::size_t>();
        m->dual_objective = params.at("dual_objective").get<double>();
        m->primal_objective = params.at("primal_objective").get<double>();
        return m;
    }
    if (kind == "lda") {
        auto m = std::make_unique<LdaModel>();
        m->w = params.at("w").get<std::vector<double>>();
        m->mean_spam_z = params.at("mean_spam_z").get<double>();
        m->mean_ham_z = params.at("mean_ham_z").get<double>();
        m->var_z = params.at("var_z").get<double>();
        m->log_prior_spam = params.at("log_prior_spam").get<double>();
        m->log_prior_ham = params.at("log_prior_ham").get<double>();
        return m;
    }
    if (kind == "dt") {
        auto m = std::make_unique<DtModel>();
        m->config.max_depth = hyper.at("max_depth").get<std::size_t>();
        m->config.min_samples_split = hyper.at("min_samples_split").get<std::size_t>();
        m->dim = params.at("dim").get<std::size_t>();
        for (const json& n : params.at("nodes")) {
            DtNode nd;
            const long long f = n.at("feature").get<long long>();
            nd.feature = f < 0 ? DtNode::npos : static_cast<std::size_t>(f);
            nd.threshold = n.at("threshold").get<double>();
            nd.left = n.at("left").get<std::size_t>();
            nd.right = n.at("right").get<std::size_t>();
            nd.spam_fraction = n.at("spam_fraction").get<double>();
            m->nodes.push_back(nd);
        }
        if (m->nodes.empty()) throw DataError("model file: decision tree has no nodes");
        return m;
    }
    if (kind == "dnn") {
        auto m = std::make_unique<DnnModel>();
        m->config.hidden = hyper.at("hidden").get<std::vector<std::size_t>>();
        m->config.dropout = hyper.at("dropout").get<double>();
        m->config.learning_rate = hyper.at("learning_rate").get<double>();
        m->config.momentum = hyper.at("momentum").get<double>();
        m->config.batch_size = hyper.at("batch_size").get<std::size_t>();
        m->config.epochs = hyper.at("epochs").get<std::size_t>();
        m->config.seed = hyper.at("seed").get<std::uint64_t>();
        m->dim = params.at("dim").get<std::size_t>();
        for (const json& w : params.at("weights"))
            m->weights.push_back(dense_from_json(w));
        m->biases = params.at("biases").get<std::vector<std::vector<double>>>();
        if (m->weights.size() != m->biases.size() || m->weights.empty())
            throw DataError("model file: inconsistent dnn layers");
        return m;
    }
    throw DataError("model file: unknown model_kind '" + kind + "'");
}

}  // namespace

std::string model_to_json_string(const Model& model) {
    return serialize(model).dump(2);
}

std::unique_ptr<Model> model_from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("model file: invalid JSON: ") + e.what());
    }
    try {
        return deserialize(j);
    } catch (const json::exception& e) {
        throw DataError(std::string("model file: bad schema: ") + e.what());
    }
}

void save_model(const Model& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open model file for writing: " + path.string());
    out << model_to_json_string(model) << '\n';
    if (!out) throw IoError("failed writing model file: " + path.string());
}

std::unique_ptr<Model> load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return model_from_json_string(text);
}

}  // namespace spamlab
