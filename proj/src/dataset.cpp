#include "clesh/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace clesh {

namespace {

// Minimal RFC-4180-style field splitter: quoted fields may contain commas
// and doubled quotes; embedded newlines are not supported.
std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no, const std::string& path) {
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            in_quotes = true;
        } else if (ch == ',') {
            fields.push_back(field);
            field.clear();
        } else if (ch == '\r' && i + 1 == line.size()) {
            // tolerate CRLF
        } else {
            field += ch;
        }
    }
    if (in_quotes) {
        throw ValidationError(path + ": line " + std::to_string(line_no) + ": unterminated quoted field");
    }
    fields.push_back(field);
    return fields;
}

std::string trim_ws(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
    return s.substr(b, e - b);
}

double parse_cell(const std::string& raw, std::size_t row, std::size_t col, const std::string& header,
                  const std::string& path) {
    const std::string cell = trim_ws(raw);
    if (cell.empty()) {
        throw ValidationError(path + ": missing value at row " + std::to_string(row) + ", column '" + header +
                              "' (index " + std::to_string(col) + ")");
    }
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + cell.size()) {
        throw ValidationError(path + ": non-numeric cell '" + cell + "' at row " + std::to_string(row) +
                              ", column '" + header + "' (index " + std::to_string(col) + ")");
    }
    return v;
}

} // namespace

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) {
            for (const auto& f : split_csv_line(line, line_no, path)) {
                table.header.push_back(trim_ws(f));
            }
            continue;
        }
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line, line_no, path);
        if (fields.size() != table.header.size()) {
            throw ValidationError(path + ": row " + std::to_string(line_no - 1) + " has " +
                                  std::to_string(fields.size()) + " cells, expected " +
                                  std::to_string(table.header.size()));
        }
        std::vector<double> row(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            row[c] = parse_cell(fields[c], line_no - 1, c, table.header[c], path);
        }
        table.rows.push_back(std::move(row));
    }
    if (table.header.empty()) throw ValidationError(path + ": missing header row");
    return table;
}

DatasetBundle load_dataset(const std::string& features_path, const std::string& shap_path,
                           const std::string& label_name) {
    const CsvTable feat = read_csv(features_path);
    const CsvTable shap = read_csv(shap_path);

    const std::size_t n_features = feat.header.size();
    for (std::size_t c = 0; c < n_features; ++c) {
        if (feat.header[c].empty()) {
            throw ValidationError(features_path + ": empty feature name at column index " + std::to_string(c));
        }
    }
    {
        std::map<std::string, std::size_t> seen;
        for (std::size_t c = 0; c < n_features; ++c) {
            auto [it, inserted] = seen.emplace(feat.header[c], c);
            if (!inserted) {
                throw ValidationError(features_path + ": duplicate header '" + feat.header[c] + "' at columns " +
                                      std::to_string(it->second) + " and " + std::to_string(c));
            }
        }
    }
    if (shap.header.size() != n_features) {
        throw ValidationError("header mismatch: " + features_path + " has " + std::to_string(n_features) +
                              " columns, " + shap_path + " has " + std::to_string(shap.header.size()));
    }

    // Reconcile SHAP column order to the feature file by header name.
    std::vector<std::size_t> shap_col(n_features);
    {
        std::map<std::string, std::size_t> shap_index;
        for (std::size_t c = 0; c < shap.header.size(); ++c) {
            auto [it, inserted] = shap_index.emplace(shap.header[c], c);
            if (!inserted) {
                throw ValidationError(shap_path + ": duplicate header '" + shap.header[c] + "'");
            }
        }
        for (std::size_t c = 0; c < n_features; ++c) {
            auto it = shap_index.find(feat.header[c]);
            if (it == shap_index.end()) {
                throw ValidationError(shap_path + ": missing column '" + feat.header[c] + "' present in " +
                                      features_path);
            }
            shap_col[c] = it->second;
        }
    }

    if (feat.rows.size() != shap.rows.size()) {
        throw ValidationError("dimension mismatch: " + features_path + " has " + std::to_string(feat.rows.size()) +
                              " rows, " + shap_path + " has " + std::to_string(shap.rows.size()) + " rows");
    }
    if (feat.rows.size() < 3) {
        throw ValidationError("dataset too small: " + std::to_string(feat.rows.size()) +
                              " samples (need at least 3)");
    }

    DatasetBundle bundle;
    bundle.feature_names = feat.header;
    bundle.label_name = label_name;
    bundle.features = Matrix(feat.rows.size(), n_features);
    bundle.shap_values = Matrix(feat.rows.size(), n_features);
    for (std::size_t r = 0; r < feat.rows.size(); ++r) {
        for (std::size_t c = 0; c < n_features; ++c) {
            const double fv = feat.rows[r][c];
            if (!std::isfinite(fv)) {
                throw ValidationError(features_path + ": non-finite value at row " + std::to_string(r + 1) +
                                      ", column '" + feat.header[c] + "' (index " + std::to_string(c) + ")");
            }
            const double sv = shap.rows[r][shap_col[c]];
            if (!std::isfinite(sv)) {
                throw ValidationError(shap_path + ": non-finite SHAP value at row " + std::to_string(r + 1) +
                                      ", column '" + feat.header[c] + "'");
            }
            bundle.features.at(r, c) = fv;
            bundle.shap_values.at(r, c) = sv;
        }
    }
    return bundle;
}

void write_dataset(const DatasetBundle& bundle, const std::string& features_path, const std::string& shap_path) {
    auto write_matrix = [&](const Matrix& m, const std::string& path) {
        std::ofstream out(path);
        if (!out) throw ValidationError("cannot write file: " + path);
        for (std::size_t c = 0; c < bundle.feature_names.size(); ++c) {
            if (c) out << ',';
            const std::string& name = bundle.feature_names[c];
            if (name.find_first_of(",\"") != std::string::npos) {
                std::string quoted = "\"";
                for (char ch : name) {
                    quoted += ch;
                    if (ch == '"') quoted += '"';
                }
                quoted += '"';
                out << quoted;
            } else {
                out << name;
            }
        }
        out << '\n';
        char buf[40];
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                std::snprintf(buf, sizeof(buf), "%.17g", m.at(r, c));
                if (c) out << ',';
                out << buf;
            }
            out << '\n';
        }
    };
    write_matrix(bundle.features, features_path);
    write_matrix(bundle.shap_values, shap_path);
}

} // namespace clesh
