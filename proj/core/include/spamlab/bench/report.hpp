#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "spamlab/bench/experiment.hpp"

namespace spamlab {

enum class ReportFormat { json, csv, markdown };

// Canonical JSON documents. Serialization is deterministic; pass
// include_timing = false to drop the wall-clock fields (the only
// run-to-run varying values).
std::string grid_to_json(const GridReport& grid, bool include_timing = true);
std::string run_to_json(const RunReport& report, bool include_timing = true);

// The grid as a Markdown table (one row per cell, error rows flagged).
std::string grid_to_markdown(const GridReport& grid);

// "<classifier>_<features>", e.g. "nb_bow".
std::string cell_key(ClassifierId classifier, FeatureMethod features);

// Writes the grid table in the requested format (grid.json / grid.csv /
// grid.md) plus, for every successful cell, roc_<cell>.csv and
// confusion_<cell>.json, and scree.csv from the first successful tfidf
// cell. Returns the written paths. Identical reports produce byte-identical
// files; the directory is created if needed.
std::vector<std::filesystem::path> emit_report(const GridReport& grid,
                                               const std::filesystem::path& out_dir,
                                               ReportFormat format);

// All three formats.
std::vector<std::filesystem::path> emit_report_all(
    const GridReport& grid, const std::filesystem::path& out_dir);

// Single-run outputs: run_<cell>.json, roc_<cell>.csv, confusion_<cell>.json
// and scree.csv for tfidf runs.
std::vector<std::filesystem::path> emit_report(const RunReport& report,
                                               const std::filesystem::path& out_dir);

// scree.csv content for arbitrary (component, ratio) pairs.
std::vector<std::filesystem::path> emit_scree_csv(
    const std::vector<std::pair<std::size_t, double>>& data,
    const std::filesystem::path& out_dir);

}  // namespace spamlab
