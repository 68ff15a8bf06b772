#include "gkp/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gkp/errors.hpp"

namespace gkp::io {

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void CsvTable::add_row(const std::vector<double>& row) {
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (double v : row) {
        cells.push_back(format_double(v));
    }
    add_row(cells);
}

void CsvTable::add_row(const std::vector<std::string>& row) {
    if (row.size() != header_.size()) {
        throw DomainError("CSV row width does not match the header");
    }
    rows_.push_back(row);
}

void CsvTable::write(std::ostream& out) const {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) {
                out << ',';
            }
            out << cells[i];
        }
        out << '\n';
    };
    line(header_);
    for (const auto& r : rows_) {
        line(r);
    }
}

std::string CsvTable::str() const {
    std::ostringstream os;
    write(os);
    return os.str();
}

CsvTable samples_table(const QuadratureGrid& grid, const std::vector<complex>& samples) {
    if (samples.size() != grid.size()) {
        throw DomainError("sample count does not match the grid");
    }
    CsvTable t({"u", "re", "im", "abs2"});
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto& s = samples[k];
        t.add_row(std::vector<double>{grid.at(k), s.real(), s.imag(), std::norm(s)});
    }
    return t;
}

nlohmann::ordered_json comb_to_json(const GaussianComb& comb) {
    nlohmann::ordered_json out;
    out["quadrature"] = std::string(to_string(comb.quadrature()));
    out["normalized"] = comb.normalized();
    auto comps = nlohmann::ordered_json::array();
    for (const auto& c : comb.components()) {
        nlohmann::ordered_json e;
        e["center"] = c.center;
        e["variance"] = c.variance;
        e["amp_re"] = c.amplitude.real();
        e["amp_im"] = c.amplitude.imag();
        if (c.tilt != 0.0) {
            e["tilt"] = c.tilt;
        }
        comps.push_back(std::move(e));
    }
    out["components"] = std::move(comps);
    return out;
}

GaussianComb comb_from_json(const nlohmann::json& j) {
    try {
        const auto q = parse_quadrature(j.at("quadrature").get<std::string>());
        std::vector<GaussianComponent> parts;
        for (const auto& e : j.at("components")) {
            GaussianComponent c;
            c.center = e.at("center").get<double>();
            c.variance = e.at("variance").get<double>();
            c.amplitude = {e.at("amp_re").get<double>(), e.at("amp_im").get<double>()};
            c.tilt = e.value("tilt", 0.0);
            parts.push_back(c);
        }
        return GaussianComb(q, std::move(parts));
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed comb JSON: ") + e.what());
    }
}

void write_file(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(p, std::ios::binary);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    out << text;
    if (!out) {
        throw Error("failed writing '" + path + "'");
    }
}

}  // namespace gkp::io
