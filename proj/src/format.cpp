#include "rnd/format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace rnd {

std::string fmt_num(double v, bool full) {
    char buf[64];
    if (full) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }
    if (v == 0.0) return "0";
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    // round to three significant digits first so 9.996 prints as 10.0
    std::snprintf(buf, sizeof buf, "%.2e", v);
    const double r = std::strtod(buf, nullptr);
    const int e = static_cast<int>(std::floor(std::log10(std::fabs(r))));
    if (e < -5 || e > 5) return buf;
    std::snprintf(buf, sizeof buf, "%.*f", std::max(0, 2 - e), r);
    return buf;
}

std::string render_text(const TextTable& t) {
    std::vector<std::size_t> w(t.header.size(), 0);
    auto widen = [&](const std::vector<std::string>& r) {
        if (r.size() > w.size()) w.resize(r.size(), 0);
        for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
    };
    widen(t.header);
    for (const auto& r : t.rows) widen(r);
    std::ostringstream os;
    if (!t.title.empty()) os << t.title << '\n';
    auto line = [&](const std::vector<std::string>& r) {
        std::string s;
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) s += "  ";
            const std::string pad(w[i] - r[i].size(), ' ');
            s += i == 0 ? r[i] + pad : pad + r[i];
        }
        while (!s.empty() && s.back() == ' ') s.pop_back();
        os << s << '\n';
    };
    line(t.header);
    std::size_t total = 0;
    for (auto x : w) total += x;
    os << std::string(total + 2 * (w.empty() ? 0 : w.size() - 1), '-') << '\n';
    for (const auto& r : t.rows) line(r);
    return os.str();
}

std::string render_delimited(const TextTable& t, char sep) {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? std::string(1, sep) : "") << r[i];
        os << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
    return os.str();
}

TextTable density_panel(const DensityTable& dt, bool full) {
    TextTable t;
    t.title = "Relative density errors (percent)";
    t.header = {"norm"};
    for (const auto& r : dt.rows) t.header.push_back(r.spec.name);
    std::vector<std::string> l2{"L2"}, l1{"L1"}, li{"Linf"};
    for (const auto& r : dt.rows) {
        l2.push_back(fmt_num(r.err.l2, full));
        l1.push_back(fmt_num(r.err.l1, full));
        li.push_back(fmt_num(r.err.linf, full));
    }
    t.rows = {l2, l1, li};
    return t;
}

namespace {

const std::vector<int> kTableLevels{25, 50, 75, 95, 99};

}  // namespace

std::vector<TextTable> pricing_panels(const PricingTable& pt, bool corrected, bool full) {
    const auto& reps = corrected ? pt.corrected : pt.raw;
    const std::string what = corrected ? "corrected" : "raw";
    TextTable mean, dist;
    mean.title = "Mean absolute relative pricing error, " + what + " (percent)";
    dist.title = "Quantiles of absolute relative pricing error, " + what + " (percent)";
    mean.header = {""};
    dist.header = {"quantile"};
    std::vector<std::string> mrow{"mean"};
    for (std::size_t i = 0; i < reps.size(); ++i) {
        mean.header.push_back(pt.names[i]);
        dist.header.push_back(pt.names[i]);
        mrow.push_back(fmt_num(100.0 * reps[i].all.mean, full));
    }
    mean.rows.push_back(mrow);
    for (int l : kTableLevels) {
        std::vector<std::string> r{std::to_string(l) + "%"};
        for (const auto& rep : reps) r.push_back(fmt_num(100.0 * rep.all.at(l), full));
        dist.rows.push_back(r);
    }
    return {mean, dist};
}

TextTable price_fit_panel(const PriceFitReport& r, bool full) {
    TextTable t;
    t.title = "Hermite " + flavor_name(r.model.flavor) + " order " + std::to_string(r.model.order()) +
              " calibrated to the prices (percent)";
    t.header = {"mean", "median", "75%", "95%", "max"};
    t.rows.push_back({fmt_num(100.0 * r.errors.mean, full), fmt_num(100.0 * r.errors.at(50), full),
                      fmt_num(100.0 * r.errors.at(75), full), fmt_num(100.0 * r.errors.at(95), full),
                      fmt_num(100.0 * r.max_error, full)});
    return t;
}

std::vector<TextTable> loo_panels(const std::vector<int>& sizes, const std::vector<std::vector<LooReport>>& runs,
                                  bool full) {
    std::vector<TextTable> out;
    if (runs.empty()) return out;
    const std::size_t ne = runs.front().size();
    for (std::size_t e = 0; e < ne; ++e) {
        TextTable t;
        t.title = runs.front()[e].estimator.name();
        t.header = {"quantile"};
        for (int s : sizes) t.header.push_back("n=" + std::to_string(s));
        auto cell = [&](const Summary& a, const Summary& b, auto get) {
            const std::string x = a.n_points ? fmt_num(100.0 * get(a), full) : "-";
            const std::string y = b.n_points ? fmt_num(100.0 * get(b), full) : "-";
            return x + " (" + y + ")";
        };
        for (int l : default_levels()) {
            std::vector<std::string> r{std::to_string(l) + "%"};
            for (const auto& run : runs)
                r.push_back(cell(run[e].report.all, run[e].report.in_range, [l](const Summary& s) { return s.at(l); }));
            t.rows.push_back(r);
        }
        std::vector<std::string> mean{"mean"}, pts{"test points"}, fails{"failures"};
        for (const auto& run : runs) {
            const auto& rep = run[e].report;
            mean.push_back(cell(rep.all, rep.in_range, [](const Summary& s) { return s.mean; }));
            pts.push_back(std::to_string(rep.all.n_points) + " (" + std::to_string(rep.in_range.n_points) + ")");
            fails.push_back(std::to_string(rep.failures));
        }
        t.rows.push_back(mean);
        t.rows.push_back(pts);
        t.rows.push_back(fails);
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace rnd
