#pragma once

// Report document model, Markdown/HTML rendering, and the run manifest.
// Everything written under the output directory goes through RunOutputs so
// the manifest is complete by construction.

#include "clesh/config.hpp"
#include "clesh/sentences.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace clesh {

inline constexpr const char* kToolVersion = "0.1.0";

class ReportDoc {
  public:
    void section(const std::string& title);
    void paragraph(const std::string& text);
    void bullets(const std::vector<std::string>& items);
    void key_values(const std::vector<std::pair<std::string, std::string>>& rows);
    void image(const std::string& caption, const std::string& rel_path);

    std::string markdown(const std::string& title) const;
    // Self-contained HTML; SVG plot bodies are inlined from rel_path -> bytes.
    std::string html(const std::string& title, const std::map<std::string, std::string>& inline_svgs) const;

    std::size_t section_count() const;

  private:
    struct Block {
        enum class Kind { section, paragraph, bullets, key_values, image } kind;
        std::string text;
        std::string extra;
        std::vector<std::string> items;
        std::vector<std::pair<std::string, std::string>> rows;
    };
    std::vector<Block> blocks_;
};

struct ManifestEntry {
    std::string path; // relative to the output root
    std::string kind; // plot | report | manifest
    std::string sha256;
};

class RunOutputs {
  public:
    explicit RunOutputs(const std::filesystem::path& root);

    // Writes bytes under the root and records the manifest entry.
    void write(const std::string& rel_path, const std::string& kind, const std::string& bytes);

    // Writes manifest.json last; its own entry carries an empty digest since
    // it cannot hash itself.
    void finalize_manifest(const Config& config);

    const std::vector<ManifestEntry>& entries() const { return entries_; }
    const std::filesystem::path& root() const { return root_; }

  private:
    std::filesystem::path root_;
    std::vector<ManifestEntry> entries_;
};

// File-name-safe slug for a feature name (deterministic).
std::string slugify(const std::string& name);

} // namespace clesh
