#pragma once

// Loading and validation of the aligned feature/SHAP matrix pair. This is the
// single entry point for all external data; everything downstream assumes a
// validated bundle.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace clesh {

// Raised for any input-validation failure (malformed CSV, misaligned
// matrices, non-finite values); the CLI maps it to exit code 1.
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Row-major n_samples x n_features matrix.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<double> column(std::size_t c) const {
        std::vector<double> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = data_[r * cols_ + c];
        return out;
    }

    bool operator==(const Matrix&) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct DatasetBundle {
    std::vector<std::string> feature_names;
    std::string label_name;
    Matrix features;
    Matrix shap_values;

    std::size_t n_samples() const { return features.rows(); }
    std::size_t n_features() const { return features.cols(); }

    bool operator==(const DatasetBundle&) const = default;
};

// Loads two CSV files (header row of feature names, one sample per row).
// SHAP columns are reconciled to the feature-file order by header name.
// All validation failures throw ValidationError with row/column coordinates.
DatasetBundle load_dataset(const std::string& features_path, const std::string& shap_path,
                           const std::string& label_name);

// Writes the bundle back to two CSV files with round-trip-exact numbers.
void write_dataset(const DatasetBundle& bundle, const std::string& features_path,
                   const std::string& shap_path);

// Low-level CSV access used by load_dataset and the tests.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};
CsvTable read_csv(const std::string& path);

} // namespace clesh
