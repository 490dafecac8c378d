#include "clesh/pipeline.hpp"
#include "clesh/plots.hpp"
#include "clesh/report.hpp"
#include "clesh/rng.hpp"
#include "clesh/sha256.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

using namespace clesh;

namespace {

std::size_t count_substr(const std::string& haystack, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("clesh_report_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

// Mixed-type bundle with planted patterns, small enough for fast runs.
DatasetBundle demo_bundle(std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t n = 160;
    DatasetBundle bundle;
    bundle.label_name = "Metabolic Syndrome";
    bundle.feature_names = {"smoker", "stage", "age", "noise_a", "noise_b"};
    bundle.features = Matrix(n, 5);
    bundle.shap_values = Matrix(n, 5);
    for (std::size_t r = 0; r < n; ++r) {
        const double smoker = (r % 2 == 0) ? 0.0 : 1.0;
        const double stage = std::floor(rng.uniform(0.0, 3.0));
        const double age = rng.uniform(20.0, 80.0);
        bundle.features.at(r, 0) = smoker;
        bundle.features.at(r, 1) = stage;
        bundle.features.at(r, 2) = age;
        bundle.features.at(r, 3) = rng.uniform(0.0, 1.0);
        bundle.features.at(r, 4) = rng.uniform(0.0, 1.0);
        bundle.shap_values.at(r, 0) = rng.normal(smoker > 0.5 ? 0.8 : -0.8, 0.1);
        bundle.shap_values.at(r, 1) = rng.normal(0.3 * (stage - 1.0), 0.1);
        bundle.shap_values.at(r, 2) = 0.01 * (age - 50.0) + rng.normal(0.0, 0.02);
        bundle.shap_values.at(r, 3) = rng.normal(0.0, 0.01);
        bundle.shap_values.at(r, 4) = rng.normal(0.0, 0.005);
    }
    return bundle;
}

Config demo_config(const std::filesystem::path& out) {
    return load_config(std::nullopt, {{"candidate_num_min", "2"},
                                      {"candidate_num_max", "4"},
                                      {"output_dir", out.string()}});
}

} // namespace

TEST_CASE("number formatting") {
    CHECK(format_number(0.82) == "0.820");
    CHECK(format_number(1234.0) == "1.23e+03");
    CHECK(format_number(0.0132) == "0.0132");
    CHECK(format_signed(0.82) == "+0.820");
    CHECK(format_signed(-0.5) == "-0.500");
    CHECK(format_p(0.0003) == "p < 0.001");
    CHECK(format_p(0.0132) == "p = 0.0132");
    CHECK(format_p(0.5) == "p = 0.500");
}

TEST_CASE("sentences never claim significance for non-significant findings") {
    const Config config = load_config(std::nullopt, {});
    ContinuousFinding cont;
    cont.feature = 0;
    cont.selection.none_significant = true;
    const auto sentences =
        sentences_for_univariate(UnivariateFinding{cont}, {"Age"}, "Disease", config);
    REQUIRE(sentences.size() == 1);
    CHECK(sentences[0].template_id == TemplateId::continuous_none_significant);
    CHECK(sentences[0].rendered ==
          "No statistically significant linear, quadratic, or sigmoid pattern was found for feature 'Age'.");
}

TEST_CASE("binary zero-test sentence matches the documented template") {
    Config config = load_config(std::nullopt, {});
    CategoricalFinding cat;
    cat.feature = 0;
    cat.kind = FeatureKind::binary;
    CategoryStats stats;
    stats.value = 1.0;
    stats.n = 50;
    stats.mean_shap = 0.82;
    stats.usable = true;
    TestResult zero;
    zero.test_name = TestName::t_one_sample;
    zero.p_value = 0.0003;
    stats.zero_test = zero;
    cat.per_category.push_back(stats);
    const auto sentences = sentences_for_univariate(UnivariateFinding{cat}, {"X"}, "Disease", config);
    REQUIRE(!sentences.empty());
    CHECK(sentences[0].rendered ==
          "For predicting 'Disease', feature 'X' = 1.00 pushes predictions higher (mean SHAP +0.820, p < 0.001).");
}

TEST_CASE("sigmoid sentence names family, direction and inflection") {
    const Config config = load_config(std::nullopt, {});
    ContinuousFinding cont;
    cont.feature = 0;
    FitResult fit;
    fit.family = FitFamily::sigmoid;
    fit.big_l = 2.0;
    fit.a = 3.0;
    fit.x0 = 1.5;
    fit.b = -1.0;
    fit.p_value_a = 0.0001;
    fit.rmse = 0.05;
    fit.converged = true;
    cont.selection.best = fit;
    cont.selection.none_significant = false;
    cont.selection.significant_fits = {fit};
    const auto sentences = sentences_for_univariate(UnivariateFinding{cont}, {"Waist"}, "MS", config);
    REQUIRE(sentences.size() == 1);
    const std::string& text = sentences[0].rendered;
    CHECK(text.find("sigmoid") != std::string::npos);
    CHECK(text.find("rising") != std::string::npos);
    CHECK(text.find("1.50") != std::string::npos);
    CHECK(text.find("p < 0.001") != std::string::npos);
}

TEST_CASE("scatter svg structure: n points, one path") {
    ScatterPayload payload;
    payload.title = "demo";
    ScatterSeries series;
    for (int i = 0; i < 17; ++i) series.points.emplace_back(i, i * 0.5);
    for (int i = 0; i < 10; ++i) series.curve.emplace_back(i, i * 0.5);
    payload.series.push_back(series);
    const std::string svg = render_scatter(payload);
    CHECK(count_substr(svg, "<circle") == 17);
    CHECK(count_substr(svg, "<path") == 1);
}

TEST_CASE("box svg structure: one group element per category") {
    BoxPayload payload;
    payload.title = "demo";
    for (int c = 0; c < 4; ++c) {
        payload.categories.push_back(BoxCategory{std::to_string(c), {{1.0, 2.0, 3.0, 2.0, 1.5}}});
    }
    const std::string svg = render_box(payload);
    CHECK(count_substr(svg, "<g class=\"box\">") == 4);
}

TEST_CASE("identical payloads render byte-identical svg") {
    SelectionPayload payload;
    payload.title = "cuts";
    payload.mean_abs_by_rank = {0.9, 0.5, 0.3, 0.1, 0.05};
    payload.cut_positions = {2, 4};
    payload.chosen_k = 2;
    payload.window_min = 1;
    payload.window_max = 4;
    CHECK(render_selection(payload) == render_selection(payload));

    TukeyPayload tk;
    tk.title = "tukey";
    tk.intervals = {{"1 - 2", 0.5, 0.2, true}, {"1 - 3", -0.1, 0.3, false}};
    CHECK(render_tukey(tk) == render_tukey(tk));
}

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("full report run: sections, manifest, determinism") {
    TempDir dir;
    const DatasetBundle bundle = demo_bundle(31415);
    const Config config = demo_config(dir.path / "out");

    const AnalysisReport report = analyze_bundle(bundle, config, 2);
    write_outputs(report, bundle, config);

    const std::string md = read_file(dir.path / "out" / "report.md");
    SUBCASE("exactly five top-level sections") {
        CHECK(count_substr(md, "\n## ") == 5);
        CHECK(md.find("## Methods") != std::string::npos);
        CHECK(md.find("## Number of Important Features") != std::string::npos);
        CHECK(md.find("## Univariate Analysis") != std::string::npos);
        CHECK(md.find("## Interaction Analysis") != std::string::npos);
        CHECK(md.find("## Caveats") != std::string::npos);
    }
    SUBCASE("every hyperparameter value appears in the methods section") {
        for (const char* key : {"candidate_num_min", "candidate_num_max", "p_feature_selection", "cont_bound",
                                "manual_num", "p_univariate", "p_interaction", "rng_seed"}) {
            CHECK(md.find(key) != std::string::npos);
        }
    }
    SUBCASE("fig-2 style layout") {
        CHECK(std::filesystem::exists(dir.path / "out" / "feature_selection.svg"));
        CHECK(std::filesystem::exists(dir.path / "out" / "univariate_analysis"));
        CHECK(std::filesystem::exists(dir.path / "out" / "interaction_analysis"));
        CHECK(std::filesystem::exists(dir.path / "out" / "manifest.json"));
    }
    SUBCASE("manifest lists exactly the files on disk with matching digests") {
        const std::string manifest = read_file(dir.path / "out" / "manifest.json");
        std::set<std::string> on_disk;
        for (const auto& entry : std::filesystem::recursive_directory_iterator(dir.path / "out")) {
            if (entry.is_regular_file()) {
                on_disk.insert(std::filesystem::relative(entry.path(), dir.path / "out").generic_string());
            }
        }
        for (const std::string& path : on_disk) {
            CHECK(manifest.find("\"" + path + "\"") != std::string::npos);
            if (path != "manifest.json") {
                const std::string digest = sha256_hex(read_file(dir.path / "out" / path));
                CHECK(manifest.find(digest) != std::string::npos);
            }
        }
        CHECK(count_substr(manifest, "\"path\"") == on_disk.size());
    }
    SUBCASE("rerun is byte-identical") {
        std::map<std::string, std::string> first_run;
        for (const auto& entry : std::filesystem::recursive_directory_iterator(dir.path / "out")) {
            if (entry.is_regular_file()) {
                first_run[entry.path().generic_string()] = sha256_hex(read_file(entry.path()));
            }
        }
        const AnalysisReport again = analyze_bundle(bundle, config, 3);
        write_outputs(again, bundle, config);
        for (const auto& [path, digest] : first_run) {
            CHECK(sha256_hex(read_file(path)) == digest);
        }
    }
}

TEST_CASE("zero-significance run still renders all sections") {
    TempDir dir;
    Rng rng(2025);
    DatasetBundle bundle;
    bundle.label_name = "null";
    bundle.feature_names = {"u1", "u2", "u3"};
    bundle.features = Matrix(60, 3);
    bundle.shap_values = Matrix(60, 3);
    for (std::size_t r = 0; r < 60; ++r) {
        for (std::size_t c = 0; c < 3; ++c) {
            bundle.features.at(r, c) = rng.uniform(0.0, 1.0);
            bundle.shap_values.at(r, c) = rng.normal(0.0, 1.0);
        }
    }
    const Config config = demo_config(dir.path / "out");
    const AnalysisReport report = analyze_bundle(bundle, config, 1);
    write_outputs(report, bundle, config);
    const std::string md = read_file(dir.path / "out" / "report.md");
    CHECK(count_substr(md, "\n## ") == 5);
    CHECK(md.find("No statistically significant") != std::string::npos);
}

TEST_CASE("html report embeds the plots when requested") {
    TempDir dir;
    const DatasetBundle bundle = demo_bundle(999);
    Config config = load_config(std::nullopt, {{"candidate_num_min", "2"},
                                               {"candidate_num_max", "4"},
                                               {"output_dir", (dir.path / "out").string()},
                                               {"emit_html", "true"}});
    const AnalysisReport report = analyze_bundle(bundle, config, 2);
    write_outputs(report, bundle, config);
    REQUIRE(std::filesystem::exists(dir.path / "out" / "report.html"));
    const std::string html = read_file(dir.path / "out" / "report.html");
    CHECK(html.find("<svg") != std::string::npos);
    CHECK(html.find("</html>") != std::string::npos);
}

TEST_CASE("slugify is deterministic and filesystem safe") {
    CHECK(slugify("Waist Circumference") == "waist_circumference");
    CHECK(slugify("BMI (kg/m^2)") == "bmi_kg_m_2");
    CHECK(slugify("___") == "feature");
    CHECK(slugify("Age") == slugify("Age"));
}
