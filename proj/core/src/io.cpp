#include "eivarx/io.hpp"

#include "eivarx/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace eivarx {

namespace {

using nlohmann::ordered_json;

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

ordered_json num(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

ordered_json vec(const Vector& v) {
    ordered_json arr = ordered_json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(num(v(i)));
    return arr;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

void write_series_csv(std::ostream& os, const TimeSeriesPair& series, bool include_star) {
    const bool star = include_star && series.u_star && series.y_star;
    os << "k,u,y" << (star ? ",u_star,y_star" : "") << '\n';
    for (Index k = 0; k < series.size(); ++k) {
        os << k << ',' << fmt(series.u(k)) << ',' << fmt(series.y(k));
        if (star) os << ',' << fmt((*series.u_star)(k)) << ',' << fmt((*series.y_star)(k));
        os << '\n';
    }
    if (!os) throw IoError("failed writing CSV data");
}

void write_series_csv(const std::string& path, const TimeSeriesPair& series, bool include_star) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    write_series_csv(os, series, include_star);
}

TimeSeriesPair read_series_csv(std::istream& is) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(is, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            header = split(line);
            break;
        }
    }
    if (header.empty()) throw IoError("CSV input is empty");

    auto column = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    };
    const int cu = column("u");
    const int cy = column("y");
    const int cus = column("u_star");
    const int cys = column("y_star");
    if (cu < 0 || cy < 0) throw IoError("CSV header must contain columns 'u' and 'y'");
    const bool star = cus >= 0 && cys >= 0;

    std::vector<double> u, y, us, ys;
    while (std::getline(is, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size())
            throw IoError("CSV line " + std::to_string(line_no) + ": expected " +
                          std::to_string(header.size()) + " fields, got " +
                          std::to_string(cells.size()));
        auto parse = [&](int col) {
            const std::string& c = cells[static_cast<std::size_t>(col)];
            char* end = nullptr;
            const double v = std::strtod(c.c_str(), &end);
            if (c.empty() || end != c.c_str() + c.size())
                throw IoError("CSV line " + std::to_string(line_no) + ": invalid number '" + c + "'");
            return v;
        };
        u.push_back(parse(cu));
        y.push_back(parse(cy));
        if (star) {
            us.push_back(parse(cus));
            ys.push_back(parse(cys));
        }
    }

    TimeSeriesPair out;
    out.u = Eigen::Map<Vector>(u.data(), static_cast<Index>(u.size()));
    out.y = Eigen::Map<Vector>(y.data(), static_cast<Index>(y.size()));
    if (star) {
        out.u_star = Vector(Eigen::Map<Vector>(us.data(), static_cast<Index>(us.size())));
        out.y_star = Vector(Eigen::Map<Vector>(ys.data(), static_cast<Index>(ys.size())));
    }
    return out;
}

TimeSeriesPair read_series_csv(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path + "'");
    return read_series_csv(is);
}

std::string report_to_json(const IdentificationReport& r, int indent) {
    ordered_json j;
    j["lag"] = r.lag;
    j["eta_hat"] = r.eta_hat;
    j["d_hat"] = r.d_hat;
    j["delay_hat"] = r.delay_hat;
    j["a"] = vec(r.model.a);
    j["b"] = vec(r.model.b);
    j["b_standard_error"] = vec(r.b_standard_error);
    j["sigma2_ey"] = num(r.variances.sigma2_ey);
    j["sigma2_eu"] = num(r.variances.sigma2_eu);
    j["refinement_eigenvalue"] = num(r.refinement_eigenvalue);
    j["averaged"] = {{"a", vec(r.averaged.a)}, {"b", vec(r.averaged.b)}};

    ordered_json trail = ordered_json::array();
    for (const auto& e : r.eigenvalue_trail)
        trail.push_back({{"d_guess", e.d_guess}, {"eigenvalues", vec(e.eigenvalues)}});
    j["eigenvalue_trail"] = trail;

    ordered_json tests = ordered_json::array();
    for (const auto& t : r.tests)
        tests.push_back({{"d_guess", t.d_guess},
                         {"statistic", num(t.statistic)},
                         {"dof", t.dof},
                         {"critical", num(t.critical_value)},
                         {"reject", t.reject},
                         {"structural_failure", t.structural_failure}});
    j["tests"] = tests;
    j["converged"] = r.converged;
    j["iterations"] = r.iterations;
    j["degenerate_noise"] = r.degenerate_noise;
    return j.dump(indent);
}

std::string baseline_to_json(const BaselineResult& r, int indent) {
    ordered_json j;
    j["method"] = r.method;
    j["a"] = vec(r.model.a);
    j["b"] = vec(r.model.b);
    j["delay"] = r.model.delay;
    j["sigma2_ey"] = r.sigma2_ey ? num(*r.sigma2_ey) : ordered_json(nullptr);
    j["sigma2_eu"] = r.sigma2_eu ? num(*r.sigma2_eu) : ordered_json(nullptr);
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    return j.dump(indent);
}

void write_mc_csv(std::ostream& os, const McSummary& s) {
    os << "method,parameter,true,mean,two_sigma\n";
    for (const auto& p : s.parameters) {
        os << p.method << ',' << p.parameter << ',' << fmt(p.true_value) << ',' << fmt(p.mean) << ',';
        if (std::isfinite(p.two_sigma)) os << fmt(p.two_sigma);
        os << '\n';
    }
    if (!os) throw IoError("failed writing Monte Carlo CSV");
}

std::string mc_summary_to_json(const McSummary& s, int indent) {
    ordered_json j;
    j["scenario"] = s.scenario;
    j["replications"] = s.replications;
    j["base_seed"] = s.base_seed;
    j["order_recovery_rate"] = num(s.order_recovery_rate);
    j["refinement_eigenvalue_mean"] = num(s.refinement_eigenvalue_mean);
    j["failures"] = s.failures;
    j["failed_seeds"] = s.failed_seeds;
    j["failure_messages"] = s.failure_messages;

    ordered_json params = ordered_json::array();
    for (const auto& p : s.parameters)
        params.push_back({{"method", p.method},
                          {"parameter", p.parameter},
                          {"true", num(p.true_value)},
                          {"mean", num(p.mean)},
                          {"two_sigma", num(p.two_sigma)},
                          {"count", p.count}});
    j["parameters"] = params;

    ordered_json eig = ordered_json::array();
    for (const auto& e : s.eigenvalues)
        eig.push_back({{"index", e.index}, {"mean", num(e.mean)}, {"two_sigma", num(e.two_sigma)}});
    j["eigenvalues"] = eig;
    j["eta_hats"] = s.eta_hats;
    return j.dump(indent);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os << content;
    if (!content.empty() && content.back() != '\n') os << '\n';
    if (!os) throw IoError("failed writing '" + path + "'");
}

}  // namespace eivarx
