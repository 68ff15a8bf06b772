#pragma once

// CSV and JSON serialization. Numbers are written locale-independently with
// 17 significant digits so that files round-trip and compare byte for byte.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "gkp/comb.hpp"
#include "gkp/grid.hpp"

namespace gkp::io {

std::string format_double(double v);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    /// Throws DomainError when the row width differs from the header.
    void add_row(const std::vector<double>& row);
    void add_row(const std::vector<std::string>& row);

    std::size_t rows() const { return rows_.size(); }
    void write(std::ostream& out) const;
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Columns u, re, im, abs2.
CsvTable samples_table(const QuadratureGrid& grid, const std::vector<complex>& samples);

/// {quadrature, components: [{center, variance, amp_re, amp_im[, tilt]}]}
nlohmann::ordered_json comb_to_json(const GaussianComb& comb);
GaussianComb comb_from_json(const nlohmann::json& j);

/// Writes text to path, creating parent directories. Throws Error on failure.
void write_file(const std::string& path, const std::string& text);

}  // namespace gkp::io
