#include "spamlab/bench/report.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <utility>

#include <json.hpp>

#include "spamlab/error.hpp"

namespace spamlab {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Shortest round-trip decimal representation (std::to_chars).
std::string num(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

ordered_json config_json(const ExperimentConfig& c) {
    ordered_json j;
    j["data"] = c.data_path.string();
    j["stopwords"] = c.stopwords_path ? json(c.stopwords_path->string()) : json();
    j["train_fraction"] = c.split.train_fraction;
    j["seed"] = c.split.seed;
    j["features"] = feature_method_name(c.features);
    j["pca_k"] = c.pca_k;
    j["classifier"] = classifier_id_name(c.classifier);
    j["threshold"] = c.threshold ? json(*c.threshold) : json();
    ordered_json hp;
    hp["nb"] = {{"variant", c.nb.variant == NbVariant::multinomial ? "multinomial"
                                                                   : "gaussian"},
                {"alpha", c.nb.alpha},
                {"var_floor", c.nb.var_floor}};
    hp["knn"] = {{"k", c.knn.k}};
    hp["svm"] = {{"c", c.svm.c},
                 {"tol", c.svm.tol},
                 {"max_epochs", c.svm.max_epochs},
                 {"seed", c.svm.seed}};
    hp["lda"] = {{"ridge_scale", c.lda.ridge_scale}};
    hp["dt"] = {{"max_depth", c.dt.max_depth},
                {"min_samples_split", c.dt.min_samples_split}};
    hp["dnn"] = {{"hidden", c.dnn.hidden},
                 {"dropout", c.dnn.dropout},
                 {"learning_rate", c.dnn.learning_rate},
                 {"momentum", c.dnn.momentum},
                 {"batch_size", c.dnn.batch_size},
                 {"epochs", c.dnn.epochs},
                 {"seed", c.dnn.seed}};
    j["hyperparameters"] = std::move(hp);
    return j;
}

ordered_json metrics_json(const ClassMetrics& m) {
    ordered_json j;
    j["accuracy"] = m.accuracy;
    j["ham"] = {{"precision", m.ham.precision},
                {"recall", m.ham.recall},
                {"f1", m.ham.f1}};
    j["spam"] = {{"precision", m.spam.precision},
                 {"recall", m.spam.recall},
                 {"f1", m.spam.f1}};
    return j;
}

ordered_json confusion_json(const ConfusionMatrix& cm) {
    ordered_json j;
    j["tp"] = cm.tp;
    j["fp"] = cm.fp;
    j["fn"] = cm.fn;
    j["tn"] = cm.tn;
    return j;
}

ordered_json run_json(const RunReport& r, bool include_timing) {
    ordered_json j;
    j["schema_version"] = 1;
    j["kind"] = "run_report";
    j["config"] = config_json(r.config);
    j["seed"] = r.seed;
    j["corpus"] = {{"size", r.corpus_size}, {"ham", r.corpus_ham}, {"spam", r.corpus_spam}};
    j["split"] = {{"train_size", r.train_size},
                  {"train_ham", r.train_ham},
                  {"train_spam", r.train_spam},
                  {"test_size", r.test_size},
                  {"test_ham", r.test_ham},
                  {"test_spam", r.test_spam},
                  {"degenerate", r.degenerate_split}};
    j["vocab_size"] = r.vocab_size;
    j["feature_dim"] = r.feature_dim;
    j["pca_rank_deficient"] = r.pca_rank_deficient;
    j["svm_converged"] = r.svm_converged;
    j["threshold"] = r.threshold;
    j["confusion"] = confusion_json(r.cm);
    j["metrics"] = metrics_json(r.metrics);
    j["auc"] = r.roc.auc;
    j["scree"] = r.scree;
    if (include_timing) j["wall_seconds"] = r.wall_seconds;
    return j;
}

ordered_json grid_json(const GridReport& grid, bool include_timing) {
    ordered_json j;
    j["schema_version"] = 1;
    j["kind"] = "grid_report";
    j["config"] = config_json(grid.base);
    ordered_json cells = ordered_json::array();
    for (const GridCell& cell : grid.cells) {
        ordered_json c;
        c["cell"] = cell_key(cell.classifier, cell.features);
        c["classifier"] = classifier_id_name(cell.classifier);
        c["features"] = feature_method_name(cell.features);
        c["seed"] = cell.seed;
        if (cell.report) {
            c["status"] = "ok";
            c["report"] = run_json(*cell.report, include_timing);
        } else {
            c["status"] = "error";
            c["error"] = cell.error;
        }
        cells.push_back(std::move(c));
    }
    j["cells"] = std::move(cells);
    if (include_timing) j["wall_seconds"] = grid.wall_seconds;
    return j;
}

// RFC-4180 quoting for the error column of grid.csv.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (const char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

std::string grid_csv(const GridReport& grid) {
    std::string out =
        "model,features,precision_ham,precision_spam,recall_ham,recall_spam,"
        "f1_ham,f1_spam,accuracy,auc,status\n";
    for (const GridCell& cell : grid.cells) {
        out += classifier_id_name(cell.classifier);
        out += ',';
        out += feature_method_name(cell.features);
        if (cell.report) {
            const ClassMetrics& m = cell.report->metrics;
            for (const double v :
                 {m.ham.precision, m.spam.precision, m.ham.recall, m.spam.recall,
                  m.ham.f1, m.spam.f1, m.accuracy, cell.report->roc.auc}) {
                out += ',';
                out += fixed(v, 6);
            }
            out += ",ok\n";
        } else {
            out += ",,,,,,,,,";
            out += csv_field("error: " + cell.error);
            out += '\n';
        }
    }
    return out;
}

std::string sanitize_md(std::string s) {
    for (char& ch : s) {
        if (ch == '|' || ch == '\n' || ch == '\r') ch = ' ';
    }
    return s;
}

std::string grid_markdown(const GridReport& grid) {
    std::string out =
        "| Model | Features | Precision (ham) | Precision (spam) | Recall (ham) | "
        "Recall (spam) | F1 (ham) | F1 (spam) | Accuracy | AUC |\n"
        "|---|---|---|---|---|---|---|---|---|---|\n";
    for (const GridCell& cell : grid.cells) {
        out += "| ";
        out += classifier_display_name(cell.classifier);
        out += " | ";
        out += feature_display_name(cell.features);
        if (cell.report) {
            const ClassMetrics& m = cell.report->metrics;
            for (const double v :
                 {m.ham.precision, m.spam.precision, m.ham.recall, m.spam.recall,
                  m.ham.f1, m.spam.f1, m.accuracy, cell.report->roc.auc}) {
                out += " | ";
                out += fixed(v, 3);
            }
            out += " |\n";
        } else {
            out += " | error: " + sanitize_md(cell.error) + " | | | | | | | |\n";
        }
    }
    return out;
}

std::string roc_csv(const RocCurve& roc) {
    std::string out = "fpr,tpr\n";
    for (const RocPoint& p : roc.points) {
        out += num(p.fpr);
        out += ',';
        out += num(p.tpr);
        out += '\n';
    }
    return out;
}

std::string scree_csv_text(const std::vector<std::pair<std::size_t, double>>& data) {
    std::string out = "component,explained_variance_ratio\n";
    for (const auto& [component, ratio] : data) {
        out += std::to_string(component);
        out += ',';
        out += num(ratio);
        out += '\n';
    }
    return out;
}

std::vector<std::pair<std::size_t, double>> scree_pairs(const RunReport& r) {
    std::vector<std::pair<std::size_t, double>> data;
    data.reserve(r.scree.size());
    for (std::size_t i = 0; i < r.scree.size(); ++i)
        data.emplace_back(i + 1, r.scree[i]);
    return data;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec && !std::filesystem::is_directory(dir))
        throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

// Per-cell artifacts shared by the grid emitters.
void emit_cell_files(const GridReport& grid, const std::filesystem::path& out_dir,
                     std::vector<std::filesystem::path>& written) {
    bool scree_done = false;
    for (const GridCell& cell : grid.cells) {
        if (!cell.report) continue;
        const std::string key = cell_key(cell.classifier, cell.features);
        const auto roc_path = out_dir / ("roc_" + key + ".csv");
        write_file(roc_path, roc_csv(cell.report->roc));
        written.push_back(roc_path);
        const auto cm_path = out_dir / ("confusion_" + key + ".json");
        write_file(cm_path, confusion_json(cell.report->cm).dump(2) + "\n");
        written.push_back(cm_path);
        if (!scree_done && cell.features == FeatureMethod::tfidf &&
            !cell.report->scree.empty()) {
            const auto scree_path = out_dir / "scree.csv";
            write_file(scree_path, scree_csv_text(scree_pairs(*cell.report)));
            written.push_back(scree_path);
            scree_done = true;
        }
    }
}

}  // namespace

std::string cell_key(ClassifierId classifier, FeatureMethod features) {
    return std::string(classifier_id_name(classifier)) + "_" +
           feature_method_name(features);
}

std::string grid_to_json(const GridReport& grid, bool include_timing) {
    return grid_json(grid, include_timing).dump(2) + "\n";
}

std::string grid_to_markdown(const GridReport& grid) { return grid_markdown(grid); }

std::string run_to_json(const RunReport& report, bool include_timing) {
    return run_json(report, include_timing).dump(2) + "\n";
}

std::vector<std::filesystem::path> emit_report(const GridReport& grid,
                                               const std::filesystem::path& out_dir,
                                               ReportFormat format) {
    ensure_dir(out_dir);
    std::vector<std::filesystem::path> written;
    switch (format) {
        case ReportFormat::json: {
            const auto path = out_dir / "grid.json";
            write_file(path, grid_to_json(grid));
            written.push_back(path);
            break;
        }
        case ReportFormat::csv: {
            const auto path = out_dir / "grid.csv";
            write_file(path, grid_csv(grid));
            written.push_back(path);
            break;
        }
        case ReportFormat::markdown: {
            const auto path = out_dir / "grid.md";
            write_file(path, grid_markdown(grid));
            written.push_back(path);
            break;
        }
    }
    emit_cell_files(grid, out_dir, written);
    return written;
}

std::vector<std::filesystem::path> emit_report_all(
    const GridReport& grid, const std::filesystem::path& out_dir) {
    ensure_dir(out_dir);
    std::vector<std::filesystem::path> written;
    for (const auto& [name, text] :
         {std::pair<std::string, std::string>{"grid.json", grid_to_json(grid)},
          {"grid.csv", grid_csv(grid)},
          {"grid.md", grid_markdown(grid)}}) {
        const auto path = out_dir / name;
        write_file(path, text);
        written.push_back(path);
    }
    emit_cell_files(grid, out_dir, written);
    return written;
}

std::vector<std::filesystem::path> emit_report(const RunReport& report,
                                               const std::filesystem::path& out_dir) {
    ensure_dir(out_dir);
    std::vector<std::filesystem::path> written;
    const std::string key = cell_key(report.config.classifier, report.config.features);
    const auto run_path = out_dir / ("run_" + key + ".json");
    write_file(run_path, run_to_json(report));
    written.push_back(run_path);
    const auto roc_path = out_dir / ("roc_" + key + ".csv");
    write_file(roc_path, roc_csv(report.roc));
    written.push_back(roc_path);
    const auto cm_path = out_dir / ("confusion_" + key + ".json");
    write_file(cm_path, confusion_json(report.cm).dump(2) + "\n");
    written.push_back(cm_path);
    if (!report.scree.empty()) {
        const auto scree_path = out_dir / "scree.csv";
        write_file(scree_path, scree_csv_text(scree_pairs(report)));
        written.push_back(scree_path);
    }
    return written;
}

std::vector<std::filesystem::path> emit_scree_csv(
    const std::vector<std::pair<std::size_t, double>>& data,
    const std::filesystem::path& out_dir) {
    ensure_dir(out_dir);
    const auto path = out_dir / "scree.csv";
    write_file(path, scree_csv_text(data));
    return {path};
}

}  // namespace spamlab
