#include "hypflow/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "hypflow/errors.hpp"
#include "hypflow/flow.hpp"
#include "hypflow/geometry.hpp"
#include "json_io.hpp"

namespace hypflow {

namespace {

using detail::json;

std::string fmt(const char* spec, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

void require_samples(const MonitorSeries& s) {
    if (s.empty()) throw Error(ErrorCode::Domain, "monitor series is empty");
}

// ---------------------------------------------------------------------------
// CSV / JSON

std::string to_csv(const MonitorSeries& s) {
    std::string out;
    for (std::size_t c = 0; c < kMonitorColumns.size(); ++c) {
        if (c) out += ',';
        out += kMonitorColumns[c];
    }
    out += '\n';
    for (const auto& sample : s.samples) {
        const auto v = sample_values(sample);
        for (std::size_t c = 0; c < v.size(); ++c) {
            if (c) out += ',';
            out += fmt("%.17g", v[c]);
        }
        out += '\n';
    }
    return out;
}

json meta_to_json(const RunMetadata& m) {
    return {{"config_hash", m.config_hash}, {"n", m.n},           {"N", m.n_rho},
            {"n_phi", m.n_phi},             {"representation", m.representation},
            {"rng", m.rng}};
}

std::string to_json_text(const MonitorSeries& s) {
    json j;
    j["format"] = "hypflow.series";
    j["version"] = 1;
    j["metadata"] = meta_to_json(s.meta);
    j["columns"] = json::array();
    for (auto c : kMonitorColumns) j["columns"].push_back(std::string(c));
    j["samples"] = json::array();
    for (const auto& sample : s.samples) {
        const auto v = sample_values(sample);
        json row = json::object();
        for (std::size_t c = 0; c < v.size(); ++c) row[std::string(kMonitorColumns[c])] = v[c];
        j["samples"].push_back(std::move(row));
    }
    return j.dump();
}

// ---------------------------------------------------------------------------
// SVG

struct Panel {
    std::string title;
    std::vector<double> y;
    bool log_scale = false;
    std::optional<double> reference;
    std::string reference_label;
};

constexpr double kWidth = 800.0;
constexpr double kPanelHeight = 240.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 780.0;

void draw_panel(std::ostringstream& svg, const Panel& p, const std::vector<double>& t, double top) {
    auto transform = [&](double y) { return p.log_scale ? std::log10(std::max(y, 1e-300)) : y; };
    double lo = transform(p.y.front()), hi = lo;
    for (double y : p.y) {
        lo = std::min(lo, transform(y));
        hi = std::max(hi, transform(y));
    }
    if (p.reference) {
        lo = std::min(lo, transform(*p.reference));
        hi = std::max(hi, transform(*p.reference));
    }
    const double span = hi - lo;
    const double pad = span > 0.0 ? 0.05 * span : std::max(1e-12, 1e-6 * std::abs(hi));
    lo -= pad;
    hi += pad;

    const double y0 = top + 24.0;
    const double y1 = top + kPanelHeight - 30.0;
    const double t_lo = t.front();
    const double t_hi = t.back() > t_lo ? t.back() : t_lo + 1.0;
    auto px = [&](double tt) { return kLeft + (tt - t_lo) / (t_hi - t_lo) * (kRight - kLeft); };
    auto py = [&](double y) { return y1 - (transform(y) - lo) / (hi - lo) * (y1 - y0); };

    svg << "<text x=\"" << fmt("%.2f", kWidth / 2) << "\" y=\"" << fmt("%.2f", top + 16.0)
        << "\" text-anchor=\"middle\">" << p.title << "</text>\n";
    svg << "<rect x=\"" << fmt("%.2f", kLeft) << "\" y=\"" << fmt("%.2f", y0) << "\" width=\""
        << fmt("%.2f", kRight - kLeft) << "\" height=\"" << fmt("%.2f", y1 - y0)
        << "\" fill=\"none\" stroke=\"#444\"/>\n";
    const std::string lo_label = p.log_scale ? "1e" + fmt("%.2f", lo) : fmt("%.8g", lo);
    const std::string hi_label = p.log_scale ? "1e" + fmt("%.2f", hi) : fmt("%.8g", hi);
    svg << "<text x=\"" << fmt("%.2f", kLeft - 4) << "\" y=\"" << fmt("%.2f", y1)
        << "\" text-anchor=\"end\">" << lo_label << "</text>\n";
    svg << "<text x=\"" << fmt("%.2f", kLeft - 4) << "\" y=\"" << fmt("%.2f", y0 + 10)
        << "\" text-anchor=\"end\">" << hi_label << "</text>\n";
    svg << "<text x=\"" << fmt("%.2f", kLeft) << "\" y=\"" << fmt("%.2f", y1 + 16)
        << "\">t=" << fmt("%.6g", t_lo) << "</text>\n";
    svg << "<text x=\"" << fmt("%.2f", kRight) << "\" y=\"" << fmt("%.2f", y1 + 16)
        << "\" text-anchor=\"end\">t=" << fmt("%.6g", t_hi) << "</text>\n";

    if (p.reference) {
        const double yr = py(*p.reference);
        svg << "<line class=\"reference\" x1=\"" << fmt("%.2f", kLeft) << "\" y1=\"" << fmt("%.2f", yr)
            << "\" x2=\"" << fmt("%.2f", kRight) << "\" y2=\"" << fmt("%.2f", yr)
            << "\" stroke=\"#c0392b\" stroke-dasharray=\"6,4\" data-value=\""
            << fmt("%.17g", *p.reference) << "\"/>\n";
        svg << "<text x=\"" << fmt("%.2f", kRight - 4) << "\" y=\"" << fmt("%.2f", yr - 4)
            << "\" text-anchor=\"end\" fill=\"#c0392b\">" << p.reference_label << "</text>\n";
    }

    constexpr std::size_t kMaxPoints = 2000;
    const std::size_t stride = std::max<std::size_t>(1, t.size() / kMaxPoints);
    svg << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < t.size(); i += stride) {
        if (i) svg << ' ';
        svg << fmt("%.2f", px(t[i])) << ',' << fmt("%.2f", py(p.y[i]));
    }
    if ((t.size() - 1) % stride != 0) {
        svg << ' ' << fmt("%.2f", px(t.back())) << ',' << fmt("%.2f", py(p.y.back()));
    }
    svg << "\"/>\n";
}

std::string to_svg(const MonitorSeries& s) {
    std::vector<double> t, q, a, dev;
    for (const auto& sample : s.samples) {
        t.push_back(sample.t);
        q.push_back(sample.q);
        a.push_back(sample.area);
        dev.push_back(sample.umbilic_dev);
    }
    const double sharp = sharp_q_constant(s.meta.n);
    const double height = 40.0 + 3.0 * kPanelHeight;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt("%.0f", kWidth) << "\" height=\""
        << fmt("%.0f", height) << "\" viewBox=\"0 0 " << fmt("%.0f", kWidth) << ' ' << fmt("%.0f", height)
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << fmt("%.2f", kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
        << "run " << s.meta.config_hash << " (n=" << s.meta.n << ", N=" << s.meta.n_rho << ")</text>\n";
    draw_panel(svg, {"Q(t)", q, false, sharp, "sharp constant " + fmt("%.10g", sharp)}, t, 40.0);
    draw_panel(svg, {"|Sigma_t| (log scale)", a, true, std::nullopt, ""}, t, 40.0 + kPanelHeight);
    draw_panel(svg, {"max |kappa_i - 1| (log scale)", dev, true, std::nullopt, ""}, t,
               40.0 + 2.0 * kPanelHeight);
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace

Format format_from_string(std::string_view name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    if (name == "svg") return Format::Svg;
    throw Error(ErrorCode::Parse, "unknown output format '" + std::string(name) + "'");
}

const char* extension(Format f) noexcept {
    switch (f) {
        case Format::Csv: return "csv";
        case Format::Json: return "json";
        case Format::Svg: return "svg";
    }
    return "";
}

std::string emit(const MonitorSeries& series, Format format) {
    require_samples(series);
    switch (format) {
        case Format::Csv: return to_csv(series);
        case Format::Json: return to_json_text(series);
        case Format::Svg: return to_svg(series);
    }
    return {};
}

MonitorSeries series_from_json(std::string_view text) {
    constexpr const char* what = "series";
    const auto j = detail::parse_json(text, what);
    if (detail::field_or<std::string>(j, "format", "hypflow.series", what) != "hypflow.series") {
        throw Error(ErrorCode::Parse, "series: unexpected format");
    }
    MonitorSeries s;
    if (j.contains("metadata")) {
        const auto& m = j.at("metadata");
        s.meta.config_hash = detail::field_or<std::string>(m, "config_hash", "", what);
        s.meta.n = detail::field<int>(m, "n", what);
        s.meta.n_rho = detail::field_or<int>(m, "N", 0, what);
        s.meta.n_phi = detail::field_or<int>(m, "n_phi", 1, what);
        s.meta.representation = detail::field_or<std::string>(m, "representation", "axisymmetric", what);
        s.meta.rng = detail::field_or<std::string>(m, "rng", "mt19937_64", what);
    }
    if (!j.contains("samples") || !j.at("samples").is_array()) {
        throw Error(ErrorCode::Parse, "series: missing samples array");
    }
    for (const auto& row : j.at("samples")) {
        std::array<double, kCsvColumnCount> v{};
        for (std::size_t c = 0; c < v.size(); ++c) {
            v[c] = detail::field<double>(row, std::string(kMonitorColumns[c]).c_str(), what);
        }
        s.samples.push_back(sample_from_values(v));
    }
    return s;
}

MonitorSeries series_from_csv(std::string_view text) {
    MonitorSeries s;
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::Parse, "csv: missing header");
    std::string expected;
    for (std::size_t c = 0; c < kMonitorColumns.size(); ++c) {
        if (c) expected += ',';
        expected += kMonitorColumns[c];
    }
    if (line != expected) throw Error(ErrorCode::Parse, "csv: unexpected header");
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::array<double, kCsvColumnCount> v{};
        const char* p = line.c_str();
        for (std::size_t c = 0; c < v.size(); ++c) {
            char* end = nullptr;
            v[c] = std::strtod(p, &end);
            if (end == p) throw Error(ErrorCode::Parse, "csv: bad number in row " + std::to_string(row));
            p = end;
            if (c + 1 < v.size()) {
                if (*p != ',') throw Error(ErrorCode::Parse, "csv: too few columns in row " + std::to_string(row));
                ++p;
            }
        }
        if (*p != '\0') throw Error(ErrorCode::Parse, "csv: too many columns in row " + std::to_string(row));
        s.samples.push_back(sample_from_values(v));
    }
    return s;
}

// ---------------------------------------------------------------------------
// verdicts

const char* to_string(Verdict::Status s) noexcept {
    switch (s) {
        case Verdict::Status::Pass: return "pass";
        case Verdict::Status::Fail: return "fail";
        case Verdict::Status::Exempt: return "exempt";
    }
    return "";
}

bool VerdictReport::all_pass() const noexcept {
    return std::none_of(verdicts.begin(), verdicts.end(),
                        [](const Verdict& v) { return v.status == Verdict::Status::Fail; });
}

std::string VerdictReport::to_json() const {
    json j;
    j["all_pass"] = all_pass();
    j["verdicts"] = json::array();
    for (const auto& v : verdicts) {
        j["verdicts"].push_back({{"claim", v.claim},
                                 {"statement", v.statement},
                                 {"status", to_string(v.status)},
                                 {"measured", v.measured},
                                 {"threshold", v.threshold},
                                 {"detail", v.detail}});
    }
    return j.dump(2);
}

std::string VerdictReport::to_text() const {
    std::ostringstream out;
    for (const auto& v : verdicts) {
        char line[256];
        std::snprintf(line, sizeof line, "%-7s %-26s measured=%-13.6g threshold=%-11.4g ",
                      to_string(v.status), v.claim.c_str(), v.measured, v.threshold);
        out << line << v.detail << '\n';
    }
    out << (all_pass() ? "all verdicts pass\n" : "SOME VERDICTS FAIL\n");
    return out.str();
}

VerdictReport verdicts(const MonitorSeries& series, const Tolerances& tol) {
    require_samples(series);
    const auto& s = series.samples;
    const int n = series.meta.n;
    const double sharp = sharp_q_constant(n);
    VerdictReport report;
    using Status = Verdict::Status;
    auto add = [&](std::string claim, std::string statement, bool ok, double measured, double threshold,
                   std::string detail, bool exempt = false) {
        report.verdicts.push_back({std::move(claim), std::move(statement),
                                   exempt ? Status::Exempt : (ok ? Status::Pass : Status::Fail), measured,
                                   threshold, std::move(detail)});
    };

    // Q non-increasing
    double drift = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i) drift = std::max(drift, s[i].q - s[i - 1].q);
    const double decrease = s.front().q - s.back().q;
    add("q_monotone", "Q(t) is non-increasing along the flow", drift <= tol.q_drift, drift, tol.q_drift,
        n == 3 ? "exempt (degenerate): Q is conserved at n=3"
               : "largest upward step between samples; total decrease " + fmt("%.6g", decrease),
        n == 3);

    double min_q = s.front().q;
    for (const auto& x : s) min_q = std::min(min_q, x.q);
    add("q_lower_bound", "Q(t) stays above the sharp constant", min_q - sharp >= -tol.q_bound,
        sharp - min_q, tol.q_bound, "min Q " + fmt("%.12g", min_q) + " vs sharp " + fmt("%.12g", sharp));

    add("main_inequality_initial", "two-convex initial data satisfies the sigma_2 area inequality",
        s.front().main_margin >= -tol.margin, -s.front().main_margin, tol.margin,
        "margin " + fmt("%.6g", s.front().main_margin));

    const double aux = std::min(s.front().aux_margin_weighted, s.front().aux_margin_area);
    add("auxiliary_inequalities", "mean-convex initial data satisfies both lambda'-weighted inequalities",
        aux >= -tol.margin, -aux, tol.margin,
        "margins " + fmt("%.6g", s.front().aux_margin_weighted) + ", " + fmt("%.6g", s.front().aux_margin_area));

    bool increasing = true;
    double worst_growth = 0.0;  // most negative relative excess of d|S|/dt over |S|
    for (std::size_t i = 1; i < s.size(); ++i) increasing = increasing && s[i].area > s[i - 1].area;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        const double h1 = s[i].t - s[i - 1].t, h2 = s[i + 1].t - s[i].t;
        const double d = -h2 / (h1 * (h1 + h2)) * s[i - 1].area + (h2 - h1) / (h1 * h2) * s[i].area +
                         h1 / (h2 * (h1 + h2)) * s[i + 1].area;
        worst_growth = std::min(worst_growth, d / s[i].area - 1.0);
    }
    add("area_growth", "|Sigma_t| increases with d|Sigma_t|/dt >= |Sigma_t|",
        increasing && -worst_growth <= tol.area_growth_rel, -worst_growth, tol.area_growth_rel,
        increasing ? "finite-difference check over interior samples" : "area not strictly increasing");

    const double t_end = s.back().t;
    const double limit_err = std::abs(s.back().q / sharp - 1.0);
    add("q_sharp_limit", "Q(t) approaches the sharp constant", limit_err < tol.limit_rel, limit_err,
        tol.limit_rel,
        t_end >= tol.limit_min_time ? "relative gap at t=" + fmt("%.6g", t_end)
                                    : "exempt: run ends before t=" + fmt("%.6g", tol.limit_min_time),
        t_end < tol.limit_min_time);

    if (n == 3) {
        double gb = 0.0;
        for (const auto& x : s) gb = std::max(gb, std::abs(x.int_sigma[1] - x.area - 4.0 * std::numbers::pi));
        add("gauss_bonnet", "int sigma_2 - |Sigma| = 4 pi at n=3", gb < tol.gauss_bonnet, gb, tol.gauss_bonnet,
            "max deviation over samples");
    }

    if (s.front().r_min == s.front().r_max) {
        const double r0 = s.front().r_min;
        double worst = 0.0;
        for (const auto& x : s) {
            const double r = sphere_ode_oracle(r0, n, x.t - s.front().t);
            worst = std::max({worst, std::abs(x.r_min - r), std::abs(x.r_max - r)});
        }
        add("sphere_oracle", "geodesic spheres follow sinh r(t) = sinh r0 e^{t/(n-1)}",
            worst < tol.sphere_oracle, worst, tol.sphere_oracle, "max |r - r_oracle| over samples");
    }
    return report;
}

}  // namespace hypflow
