#include "qgeom/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "qgeom/errors.hpp"

namespace qgeom {

namespace {

using nlohmann::json;

json matrix_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<HermitianMatrix> parse_observables(const json& doc) {
    if (!doc.is_object() || !doc.contains("hilbert_dim") || !doc.contains("observables")) {
        throw ParseError("configuration JSON: expected keys hilbert_dim and observables");
    }
    const auto& n_field = doc.at("hilbert_dim");
    if (!n_field.is_number_integer() || n_field.get<long long>() < 1) {
        throw ParseError("configuration JSON: hilbert_dim must be a positive integer");
    }
    const auto n = n_field.get<Eigen::Index>();
    const auto& obs = doc.at("observables");
    if (!obs.is_array() || obs.empty()) throw ParseError("configuration JSON: observables must be a non-empty array");
    if (doc.contains("feature_dim") &&
        (!doc.at("feature_dim").is_number_integer() || doc.at("feature_dim").get<std::size_t>() != obs.size())) {
        throw ParseError("configuration JSON: feature_dim does not match the number of observables");
    }
    std::vector<HermitianMatrix> out;
    for (std::size_t a = 0; a < obs.size(); ++a) {
        const auto& rows = obs[a];
        const std::string where = "configuration JSON: observable " + std::to_string(a);
        if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) {
            throw ParseError(where + " must have hilbert_dim rows", 0, a + 1);
        }
        CMatrix m(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto& row = rows[static_cast<std::size_t>(i)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
                throw ParseError(where + " row " + std::to_string(i) + " must have hilbert_dim entries",
                                 static_cast<std::size_t>(i) + 1, a + 1);
            }
            for (Eigen::Index j = 0; j < n; ++j) {
                const auto& e = row[static_cast<std::size_t>(j)];
                if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                    throw ParseError(where + " entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                         ") must be [re, im]",
                                     static_cast<std::size_t>(i) + 1, a + 1);
                }
                m(i, j) = {e[0].get<double>(), e[1].get<double>()};
            }
        }
        try {
            out.emplace_back(std::move(m));
        } catch (const ValidationError& err) {
            throw ValidationError(where + ": " + err.what());
        }
    }
    return out;
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 0, e.byte);
    }
}

}  // namespace

std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) throw ValidationError("format_double: conversion failed");
    return std::string(buf.data(), ptr);
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ValidationError("cannot write " + tmp.string());
        out << text;
        out.flush();
        if (!out) throw ValidationError("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw ValidationError("cannot move output into place at " + path.string() + ": " + ec.message());
    }
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string configuration_to_json(const MatrixConfiguration& cfg) {
    json doc;
    doc["hilbert_dim"] = cfg.hilbert_dim();
    doc["feature_dim"] = cfg.feature_dim();
    json obs = json::array();
    for (const auto& x : cfg.observables()) obs.push_back(matrix_json(x.matrix()));
    doc["observables"] = std::move(obs);
    return doc.dump() + "\n";
}

std::string matrices_to_json(const std::vector<HermitianMatrix>& mats) {
    if (mats.empty()) throw ValidationError("matrices_to_json: nothing to write");
    return configuration_to_json(MatrixConfiguration(mats));
}

MatrixConfiguration configuration_from_json(const std::string& text) {
    return MatrixConfiguration(parse_observables(parse(text)));
}

std::vector<HermitianMatrix> matrices_from_json(const std::string& text) {
    return parse_observables(parse(text));
}

void write_configuration(const std::filesystem::path& path, const MatrixConfiguration& cfg) {
    write_text_atomic(path, configuration_to_json(cfg));
}

MatrixConfiguration read_configuration(const std::filesystem::path& path) {
    return configuration_from_json(read_text(path));
}

std::string matrix_to_csv(const RMatrix& m, const std::vector<std::string>& header) {
    std::string out;
    if (!header.empty()) {
        for (std::size_t j = 0; j < header.size(); ++j) {
            if (j) out += ',';
            out += header[j];
        }
        out += '\n';
    }
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += format_double(m(i, j));
        }
        out += '\n';
    }
    return out;
}

void write_csv(const std::filesystem::path& path, const RMatrix& m,
               const std::vector<std::string>& header) {
    write_text_atomic(path, matrix_to_csv(m, header));
}

}  // namespace qgeom
