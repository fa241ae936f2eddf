#include "cli_support.hpp"

#include "qgeom/datasets.hpp"
#include "qgeom/io.hpp"

namespace qgeom::cli {

RunManifest::RunManifest(std::string command, const CLI::App& sub)
    : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {
    parameters_ = nlohmann::json::object();
    for (const CLI::Option* opt : sub.get_options()) {
        const std::string name = opt->get_single_name();
        if (name.empty() || name == "help") continue;
        const auto& res = opt->results();
        if (opt->get_type_size() == 0) {
            parameters_[name] = opt->count() > 0;
        } else if (res.empty()) {
            parameters_[name] = opt->get_default_str();
        } else if (res.size() == 1) {
            parameters_[name] = res.front();
        } else {
            parameters_[name] = res;
        }
    }
}

void RunManifest::write(const std::filesystem::path& primary) const {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    nlohmann::json doc;
    doc["command"] = command_;
    doc["parameters"] = parameters_;
    doc["seeds"] = seeds_;
    doc["inputs"] = inputs_;
    doc["outputs"] = outputs_;
    doc["tool_version"] = kToolVersion;
    doc["wall_seconds"] = wall;
    if (!extra_.empty()) doc["details"] = extra_;
    write_json(primary.string() + ".manifest.json", doc);
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
    write_text_atomic(path, doc.dump(2) + "\n");
}

RMatrix read_rows(const std::filesystem::path& path, bool header) {
    return load_csv(path, header).rows;
}

nlohmann::json to_json(const RVector& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

nlohmann::json to_json(const CMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

RVector to_vector(const std::vector<double>& v) {
    return Eigen::Map<const RVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace qgeom::cli
