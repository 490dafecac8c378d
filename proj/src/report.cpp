#include "clesh/report.hpp"

#include "clesh/sha256.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

namespace clesh {

void ReportDoc::section(const std::string& title) {
    blocks_.push_back({Block::Kind::section, title, {}, {}, {}});
}

void ReportDoc::paragraph(const std::string& text) {
    blocks_.push_back({Block::Kind::paragraph, text, {}, {}, {}});
}

void ReportDoc::bullets(const std::vector<std::string>& items) {
    blocks_.push_back({Block::Kind::bullets, {}, {}, items, {}});
}

void ReportDoc::key_values(const std::vector<std::pair<std::string, std::string>>& rows) {
    blocks_.push_back({Block::Kind::key_values, {}, {}, {}, rows});
}

void ReportDoc::image(const std::string& caption, const std::string& rel_path) {
    blocks_.push_back({Block::Kind::image, caption, rel_path, {}, {}});
}

std::size_t ReportDoc::section_count() const {
    return static_cast<std::size_t>(
        std::count_if(blocks_.begin(), blocks_.end(),
                      [](const Block& b) { return b.kind == Block::Kind::section; }));
}

std::string ReportDoc::markdown(const std::string& title) const {
    std::string out = "# " + title + "\n";
    for (const Block& b : blocks_) {
        switch (b.kind) {
            case Block::Kind::section:
                out += "\n## " + b.text + "\n";
                break;
            case Block::Kind::paragraph:
                out += "\n" + b.text + "\n";
                break;
            case Block::Kind::bullets:
                out += "\n";
                for (const std::string& it : b.items) out += "- " + it + "\n";
                break;
            case Block::Kind::key_values:
                out += "\n| Setting | Value |\n|---|---|\n";
                for (const auto& [k, v] : b.rows) out += "| " + k + " | " + v + " |\n";
                break;
            case Block::Kind::image:
                out += "\n![" + b.text + "](" + b.extra + ")\n";
                break;
        }
    }
    return out;
}

namespace {

std::string html_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace

std::string ReportDoc::html(const std::string& title, const std::map<std::string, std::string>& inline_svgs) const {
    std::string out = "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\"/>\n<title>" +
                      html_escape(title) + "</title>\n";
    out += "<style>body{font-family:Helvetica,Arial,sans-serif;max-width:60em;margin:2em auto;color:#222;}"
           "h2{border-bottom:1px solid #ccc;padding-bottom:0.2em;}figure{margin:1em 0;}"
           "figcaption{font-size:0.85em;color:#666;}table{border-collapse:collapse;}"
           "td,th{border:1px solid #ccc;padding:0.25em 0.6em;}</style>\n</head>\n<body>\n";
    out += "<h1>" + html_escape(title) + "</h1>\n";
    for (const Block& b : blocks_) {
        switch (b.kind) {
            case Block::Kind::section:
                out += "<h2>" + html_escape(b.text) + "</h2>\n";
                break;
            case Block::Kind::paragraph:
                out += "<p>" + html_escape(b.text) + "</p>\n";
                break;
            case Block::Kind::bullets:
                out += "<ul>\n";
                for (const std::string& it : b.items) out += "<li>" + html_escape(it) + "</li>\n";
                out += "</ul>\n";
                break;
            case Block::Kind::key_values:
                out += "<table><tr><th>Setting</th><th>Value</th></tr>\n";
                for (const auto& [k, v] : b.rows) {
                    out += "<tr><td>" + html_escape(k) + "</td><td>" + html_escape(v) + "</td></tr>\n";
                }
                out += "</table>\n";
                break;
            case Block::Kind::image: {
                out += "<figure>\n";
                auto it = inline_svgs.find(b.extra);
                if (it != inline_svgs.end()) {
                    // strip the XML declaration when inlining
                    std::string svg = it->second;
                    const std::size_t start = svg.find("<svg");
                    if (start != std::string::npos) svg = svg.substr(start);
                    out += svg;
                } else {
                    out += "<img src=\"" + b.extra + "\" alt=\"" + html_escape(b.text) + "\"/>";
                }
                out += "\n<figcaption>" + html_escape(b.text) + "</figcaption>\n</figure>\n";
                break;
            }
        }
    }
    out += "</body>\n</html>\n";
    return out;
}

RunOutputs::RunOutputs(const std::filesystem::path& root) : root_(root) {
    std::filesystem::create_directories(root_);
}

void RunOutputs::write(const std::string& rel_path, const std::string& kind, const std::string& bytes) {
    const std::filesystem::path full = root_ / rel_path;
    std::filesystem::create_directories(full.parent_path());
    std::ofstream out(full, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + full.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    entries_.push_back(ManifestEntry{rel_path, kind, sha256_hex(bytes)});
}

void RunOutputs::finalize_manifest(const Config& config) {
    nlohmann::ordered_json manifest;
    manifest["version"] = kToolVersion;

    nlohmann::ordered_json cfg;
    cfg["candidate_num_min"] = config.candidate_num_min;
    cfg["candidate_num_max"] = config.candidate_num_max;
    cfg["p_feature_selection"] = config.p_feature_selection;
    cfg["cont_bound"] = config.cont_bound;
    if (config.manual_num) cfg["manual_num"] = *config.manual_num;
    else cfg["manual_num"] = nullptr;
    cfg["p_univariate"] = config.p_univariate;
    cfg["p_interaction"] = config.p_interaction;
    cfg["output_dir"] = config.output_dir;
    cfg["rng_seed"] = config.rng_seed;
    cfg["strict_paired_nonparametric"] = config.strict_paired_nonparametric;
    cfg["interaction_top_k"] = config.interaction_top_k;
    cfg["emit_html"] = config.emit_html;
    manifest["config"] = cfg;

    std::vector<ManifestEntry> sorted = entries_;
    sorted.push_back(ManifestEntry{"manifest.json", "manifest", ""});
    std::sort(sorted.begin(), sorted.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) { return a.path < b.path; });
    nlohmann::ordered_json files = nlohmann::ordered_json::array();
    for (const ManifestEntry& e : sorted) {
        files.push_back({{"path", e.path}, {"kind", e.kind}, {"sha256", e.sha256}});
    }
    manifest["files"] = files;

    const std::string bytes = manifest.dump(2) + "\n";
    const std::filesystem::path full = root_ / "manifest.json";
    std::ofstream out(full, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest: " + full.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    entries_ = std::move(sorted);
}

std::string slugify(const std::string& name) {
    std::string out;
    out.reserve(name.size());
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!out.empty() && out.back() != '_') {
            out += '_';
        }
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    if (out.empty()) out = "feature";
    return out;
}

} // namespace clesh
