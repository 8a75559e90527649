#include "rnd/chain.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "rnd/errors.hpp"

namespace rnd {

const char* const kChainHeader = "valuation_date,maturity_days,spot,rate,dividend_yield,strike,put_price,volume";

namespace {

[[noreturn]] void bad(std::size_t line, const std::string& what) {
    throw SchemaError("line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
    const auto lo = s.find_first_not_of(" \t\r");
    if (lo == std::string::npos) return {};
    const auto hi = s.find_last_not_of(" \t\r");
    return s.substr(lo, hi - lo + 1);
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

template <class T>
T parse_num(const std::string& s, std::size_t line, const char* field) {
    T v{};
    const char* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc() || p != end) bad(line, std::string("bad ") + field + " '" + s + "'");
    return v;
}

bool iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9})
        if (s[i] < '0' || s[i] > '9') return false;
    const int y = std::stoi(s.substr(0, 4));
    const unsigned m = static_cast<unsigned>(std::stoi(s.substr(5, 2)));
    const unsigned d = static_cast<unsigned>(std::stoi(s.substr(8, 2)));
    return std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}}.ok();
}

}  // namespace

std::vector<ChainRow> read_chain(std::istream& is) {
    std::string text;
    std::size_t line = 0;
    bool header = false;
    std::vector<ChainRow> rows;
    while (std::getline(is, text)) {
        ++line;
        const std::string t = trim(text);
        if (t.empty()) continue;
        if (!header) {
            if (split(t) != split(kChainHeader)) bad(line, std::string("expected header '") + kChainHeader + "'");
            header = true;
            continue;
        }
        const auto f = split(t);
        if (f.size() != 8) bad(line, "expected 8 fields, got " + std::to_string(f.size()));
        ChainRow r;
        if (!iso_date(f[0])) bad(line, "valuation_date '" + f[0] + "' is not an ISO-8601 date");
        r.valuation_date = f[0];
        r.maturity_days = parse_num<int>(f[1], line, "maturity_days");
        r.spot = parse_num<double>(f[2], line, "spot");
        r.rate = parse_num<double>(f[3], line, "rate");
        r.dividend_yield = parse_num<double>(f[4], line, "dividend_yield");
        r.strike = parse_num<double>(f[5], line, "strike");
        r.put_price = parse_num<double>(f[6], line, "put_price");
        r.volume = parse_num<long>(f[7], line, "volume");
        if (r.maturity_days <= 0) bad(line, "maturity_days must be positive");
        if (!(r.spot > 0.0) || !std::isfinite(r.spot)) bad(line, "spot must be positive");
        if (!std::isfinite(r.rate) || !std::isfinite(r.dividend_yield)) bad(line, "rate and dividend_yield must be finite");
        if (!(r.strike > 0.0) || !std::isfinite(r.strike)) bad(line, "strike must be positive");
        if (!(r.put_price > 0.0) || !std::isfinite(r.put_price)) bad(line, "put_price must be positive");
        if (r.volume < 0) bad(line, "volume must be non-negative");
        rows.push_back(r);
    }
    if (!header) bad(line + 1, "missing header");
    return rows;
}

std::vector<ChainRow> read_chain_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    return read_chain(in);
}

std::vector<OptionBlock> group_blocks(const std::vector<ChainRow>& rows) {
    std::map<std::pair<std::string, int>, std::vector<const ChainRow*>> by_key;
    for (const auto& r : rows) by_key[{r.valuation_date, r.maturity_days}].push_back(&r);
    std::vector<OptionBlock> out;
    for (auto& [key, rs] : by_key) {
        std::stable_sort(rs.begin(), rs.end(), [](auto* x, auto* y) { return x->strike < y->strike; });
        OptionBlock b;
        b.valuation_date = key.first;
        b.maturity_days = key.second;
        b.t = key.second / 365.0;
        b.spot = rs.front()->spot;
        b.rate = rs.front()->rate;
        b.dividend_yield = rs.front()->dividend_yield;
        for (const auto* r : rs) {
            if (r->spot != b.spot || r->rate != b.rate || r->dividend_yield != b.dividend_yield)
                throw SchemaError("block " + key.first + "/" + std::to_string(key.second) +
                                  ": spot, rate and dividend_yield differ between quotes");
            b.strikes.push_back(r->strike);
            b.prices.push_back(r->put_price);
            b.volumes.push_back(r->volume);
        }
        out.push_back(std::move(b));
    }
    return out;
}

void write_chain(std::ostream& os, const std::vector<OptionBlock>& blocks) {
    os << kChainHeader << '\n';
    char buf[256];
    for (const auto& b : blocks)
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%s,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%ld\n", b.valuation_date.c_str(),
                          b.maturity_days, b.spot, b.rate, b.dividend_yield, b.strikes[j], b.prices[j],
                          j < b.volumes.size() ? b.volumes[j] : 0L);
            os << buf;
        }
}

std::vector<OptionBlock> clean_dataset(const std::vector<OptionBlock>& raw, const CleanOptions& opt,
                                       CleanReport* report) {
    CleanReport rep;
    std::vector<OptionBlock> out;
    for (const auto& b : raw) {
        std::vector<std::size_t> idx(b.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](auto i, auto j) { return b.strikes[i] < b.strikes[j]; });

        std::vector<std::size_t> keep;
        for (auto i : idx) {
            const long vol = i < b.volumes.size() ? b.volumes[i] : 0;
            if (vol < opt.min_volume) {
                ++rep.low_volume;
                continue;
            }
            if (!keep.empty() && b.strikes[keep.back()] == b.strikes[i]) {
                ++rep.duplicate_strike;
                continue;
            }
            keep.push_back(i);
        }

        std::vector<std::size_t> mono;
        if (opt.keep_lower_strike) {
            double run_max = -INFINITY;
            for (auto i : keep) {
                if (b.prices[i] < run_max) {
                    ++rep.non_monotone;
                    continue;
                }
                run_max = b.prices[i];
                mono.push_back(i);
            }
        } else {
            double run_min = INFINITY;
            for (auto it = keep.rbegin(); it != keep.rend(); ++it) {
                if (b.prices[*it] > run_min) {
                    ++rep.non_monotone;
                    continue;
                }
                run_min = b.prices[*it];
                mono.push_back(*it);
            }
            std::reverse(mono.begin(), mono.end());
        }

        if (mono.empty()) {
            ++rep.empty_blocks;
            continue;
        }
        OptionBlock c = b;
        c.strikes.clear();
        c.prices.clear();
        c.volumes.clear();
        for (auto i : mono) {
            c.strikes.push_back(b.strikes[i]);
            c.prices.push_back(b.prices[i]);
            c.volumes.push_back(i < b.volumes.size() ? b.volumes[i] : 0);
        }
        out.push_back(std::move(c));
    }
    std::stable_sort(out.begin(), out.end(), [](const OptionBlock& x, const OptionBlock& y) {
        return std::tie(x.valuation_date, x.maturity_days) < std::tie(y.valuation_date, y.maturity_days);
    });
    if (report) *report = rep;
    return out;
}

bool block_is_clean(const OptionBlock& b) {
    if (b.strikes.size() != b.prices.size() || b.strikes.empty()) return false;
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (!(b.prices[j] > 0.0) || !(b.strikes[j] > 0.0)) return false;
        if (j > 0 && !(b.strikes[j] > b.strikes[j - 1] && b.prices[j] >= b.prices[j - 1])) return false;
    }
    return true;
}

}  // namespace rnd
