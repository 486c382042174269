#include "stackmc/emit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace stackmc {

namespace {

constexpr const char* kCsvHeader = "n,estimator,mse,stderr,trials";

std::vector<std::string> split_line(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& s)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("bad number '" + s + "'");
    return v;
}

std::size_t parse_size(const std::string& s)
{
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("bad integer '" + s + "'");
    return v;
}

std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

std::string format_double(double value)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return {buf, ptr};
}

std::string to_csv(const std::vector<ResultRow>& rows)
{
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& r : rows) {
        out += std::to_string(r.n) + ',' + r.estimator + ',' + format_double(r.mse) + ',' + format_double(r.std_error) +
               ',' + std::to_string(r.trials) + '\n';
    }
    return out;
}

std::vector<ResultRow> parse_csv(const std::string& text)
{
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) {
        throw std::invalid_argument("parse_csv: missing header '" + std::string(kCsvHeader) + "'");
    }
    std::vector<ResultRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto cells = split_line(line);
        if (cells.size() != 5) throw std::invalid_argument("parse_csv: expected 5 fields in '" + line + "'");
        rows.push_back({parse_size(cells[0]), cells[1], parse_double(cells[2]), parse_double(cells[3]),
                        parse_size(cells[4])});
    }
    return rows;
}

std::string to_json_text(const std::vector<ResultRow>& rows)
{
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : rows) {
        doc.push_back({{"n", r.n}, {"estimator", r.estimator}, {"mse", r.mse}, {"stderr", r.std_error}, {"trials", r.trials}});
    }
    return doc.dump(2) + "\n";
}

std::vector<ResultRow> parse_json_rows(const std::string& text)
{
    const auto doc = nlohmann::json::parse(text);
    std::vector<ResultRow> rows;
    for (const auto& r : doc) {
        rows.push_back({r.at("n").get<std::size_t>(), r.at("estimator").get<std::string>(), r.at("mse").get<double>(),
                        r.at("stderr").get<double>(), r.at("trials").get<std::size_t>()});
    }
    return rows;
}

std::string to_svg(const std::vector<ResultRow>& rows, const std::string& title)
{
    constexpr double width = 760, height = 480, left = 80, right = 180, top = 40, bottom = 60;
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

    std::vector<std::string> order;
    std::map<std::string, std::vector<const ResultRow*>> series;
    double min_pos = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
        if (!series.count(r.estimator)) order.push_back(r.estimator);
        series[r.estimator].push_back(&r);
        if (r.mse > 0.0) min_pos = std::min(min_pos, r.mse);
        if (r.mse - r.std_error > 0.0) min_pos = std::min(min_pos, r.mse - r.std_error);
    }
    if (!std::isfinite(min_pos)) min_pos = 1e-300;
    auto ly = [&](double v) { return std::log10(std::max(v, min_pos)); };

    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& r : rows) {
        const double lx = std::log10(static_cast<double>(std::max<std::size_t>(r.n, 1)));
        x0 = std::min(x0, lx);
        x1 = std::max(x1, lx);
        y0 = std::min(y0, ly(r.mse - r.std_error));
        y1 = std::max(y1, ly(r.mse + r.std_error));
    }
    if (x1 <= x0) { x0 -= 0.5; x1 += 0.5; }
    if (y1 <= y0) { y0 -= 0.5; y1 += 0.5; }
    const double pw = width - left - right, ph = height - top - bottom;
    auto px = [&](double lx) { return left + (lx - x0) / (x1 - x0) * pw; };
    auto py = [&](double v) { return top + (1.0 - (ly(v) - y0) / (y1 - y0)) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << left << "\" y=\"24\" font-size=\"15\">" << xml_escape(title) << "</text>\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int e = static_cast<int>(std::ceil(y0)); e <= static_cast<int>(std::floor(y1)); ++e) {
        const double y = top + (1.0 - (e - y0) / (y1 - y0)) * ph;
        os << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << left + pw << "\" y2=\"" << y
           << "\" stroke=\"#ddd\"/>\n";
        os << "<text x=\"" << left - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << e << "</text>\n";
    }
    std::vector<std::size_t> ns;
    for (const auto& r : rows) ns.push_back(r.n);
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    for (std::size_t n : ns) {
        const double x = px(std::log10(static_cast<double>(std::max<std::size_t>(n, 1))));
        os << "<text x=\"" << x << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << n << "</text>\n";
    }
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 16 << "\" text-anchor=\"middle\">samples (n)</text>\n";
    os << "<text x=\"18\" y=\"" << top + ph / 2 << "\" transform=\"rotate(-90 18 " << top + ph / 2
       << ")\" text-anchor=\"middle\">expected squared error</text>\n";

    for (std::size_t s = 0; s < order.size(); ++s) {
        const char* color = palette[s % (sizeof(palette) / sizeof(palette[0]))];
        auto pts = series[order[s]];
        std::sort(pts.begin(), pts.end(), [](const ResultRow* a, const ResultRow* b) { return a->n < b->n; });
        os << "<g class=\"series\" data-estimator=\"" << xml_escape(order[s]) << "\">\n";
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto* r : pts) {
            os << px(std::log10(static_cast<double>(std::max<std::size_t>(r->n, 1)))) << ',' << py(r->mse) << ' ';
        }
        os << "\"/>\n";
        for (const auto* r : pts) {
            const double x = px(std::log10(static_cast<double>(std::max<std::size_t>(r->n, 1))));
            os << "<line x1=\"" << x << "\" y1=\"" << py(r->mse - r->std_error) << "\" x2=\"" << x << "\" y2=\""
               << py(r->mse + r->std_error) << "\" stroke=\"" << color << "\"/>\n";
            os << "<circle cx=\"" << x << "\" cy=\"" << py(r->mse) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
        }
        os << "</g>\n";
        const double ly_legend = top + 14 + 18 * static_cast<double>(s);
        os << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly_legend - 4 << "\" x2=\"" << left + pw + 32
           << "\" y2=\"" << ly_legend - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << left + pw + 38 << "\" y=\"" << ly_legend << "\">" << xml_escape(order[s]) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::vector<std::filesystem::path> emit(const std::vector<ResultRow>& rows, const std::vector<std::string>& formats,
                                        const std::filesystem::path& dir, const std::string& stem)
{
    if (rows.empty()) throw std::invalid_argument("emit: no rows to write");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
    std::vector<std::filesystem::path> written;
    for (const auto& fmt : formats) {
        const auto path = dir / (stem + "." + fmt);
        if (fmt == "csv") {
            write_file(path, to_csv(rows));
        } else if (fmt == "json") {
            write_file(path, to_json_text(rows));
        } else if (fmt == "svg") {
            write_file(path, to_svg(rows, stem));
        } else {
            throw std::invalid_argument("emit: unknown format '" + fmt + "'");
        }
        written.push_back(path);
    }
    return written;
}

}  // namespace stackmc
