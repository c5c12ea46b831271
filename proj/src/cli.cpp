#include "cmgaps/cli.hpp"

#include "cmgaps/character.hpp"
#include "cmgaps/gaps.hpp"
#include "cmgaps/parallel.hpp"
#include "cmgaps/s2s.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace cmgaps::cli {

using json = nlohmann::ordered_json;

namespace {

std::string_view to_string(Command c) {
    switch (c) {
        case Command::coeffs: return "coeffs";
        case Command::verify: return "verify";
        case Command::gaps: return "gaps";
        case Command::intervals: return "intervals";
    }
    return "?";
}

std::string_view to_string(StrategyChoice s) {
    switch (s) {
        case StrategyChoice::recurrence: return "recurrence";
        case StrategyChoice::lattice: return "lattice";
        case StrategyChoice::both: return "both";
    }
    return "?";
}

// Shortest round-trip decimal form, identical on every run.
std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

json config_json(const RunConfig& c) {
    json j;
    j["command"] = to_string(c.command);
    j["m"] = c.m;
    switch (c.command) {
        case Command::coeffs:
            j["limit"] = c.limit;
            j["strategy"] = to_string(c.strategy);
            j["csv"] = c.write_csv;
            break;
        case Command::verify:
            j["p_max"] = c.p_max;
            j["limit"] = c.limit;
            break;
        case Command::gaps:
            j["limit"] = c.limit;
            j["n0"] = c.n0;
            j["strategy"] = to_string(c.strategy);
            if (c.C) j["C"] = *c.C;
            if (c.calibrate_prefix) {
                j["calibrate_prefix"] = *c.calibrate_prefix;
                j["slack"] = c.slack;
            }
            if (c.series_path) j["series"] = c.series_path->filename().string();
            break;
        case Command::intervals:
            j["N"] = c.N;
            j["x_lo"] = c.x_lo;
            j["x_hi"] = c.x_hi;
            j["stride"] = c.stride;
            j["top"] = c.top;
            break;
    }
    return j;
}

// Writes via a temporary file and a rename so readers never see partial output.
void write_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        body(f);
        f.flush();
        if (!f) throw std::runtime_error("write to " + tmp.string() + " failed");
    }
    std::filesystem::rename(tmp, path);
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    write_atomic(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

// Timing and environment go to a sidecar so the data files stay byte-identical.
void write_sidecar(const std::filesystem::path& data_path, double seconds) {
    json meta;
    meta["wall_seconds"] = seconds;
    meta["threads"] = thread_count();
    auto path = data_path;
    path += ".meta.json";
    write_json_file(path, meta);
}

void emit_summary(const RunConfig& config, const json& summary, std::ostream& out) {
    if (config.format == Format::json) {
        out << summary.dump(2) << '\n';
        return;
    }
    out << "key,value\n";
    for (const auto& [key, value] : summary.items()) {
        if (value.is_structured()) continue;
        out << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string series_stem(const RunConfig& c) {
    return "m" + std::to_string(c.m) + "_X" + std::to_string(c.limit);
}

}  // namespace

void validate(const RunConfig& c) {
    if (c.m % 2 == 0) throw contract_error("m must be odd");
    if (c.m < 1 || c.m > max_power_m) throw contract_error("m must lie in [1, 19]");
    switch (c.command) {
        case Command::coeffs:
        case Command::gaps:
            if (c.command == Command::gaps && c.series_path) break;
            if (c.limit < 1) throw contract_error("--limit must be positive");
            if (c.limit > batch_limit(c.m))
                throw budget_error("--limit exceeds the budget " + std::to_string(batch_limit(c.m)) +
                                   " for m = " + std::to_string(c.m));
            if (c.command == Command::gaps && c.strategy == StrategyChoice::both)
                throw contract_error("gaps takes a single strategy");
            break;
        case Command::verify:
            if (c.p_max > point_count_budget) throw budget_error("--pmax exceeds 10^6");
            if (c.limit < 1 || c.limit > batch_limit(c.m)) throw budget_error("--limit outside the series budget");
            break;
        case Command::intervals:
            if (c.N < 1) throw contract_error("--N must be >= 1");
            if (c.stride < 1) throw contract_error("--stride must be >= 1");
            if (c.x_hi > interval_scan_budget) throw budget_error("--xhi exceeds 10^9");
            if (c.x_lo < 1 && c.x_lo < c.x_hi) throw contract_error("--xlo must be >= 1");
            break;
    }
    if (c.command == Command::gaps) {
        if (c.n0 < 1) throw contract_error("--n0 must be >= 1");
        if (c.C && !(*c.C > 0.0)) throw contract_error("--C must be positive");
        if (c.C && c.calibrate_prefix) throw contract_error("--C and --calibrate-prefix are exclusive");
        if (!(c.slack > 0.0)) throw contract_error("--slack must be positive");
    }
    if (!std::filesystem::is_directory(c.out_dir))
        throw contract_error("output directory " + c.out_dir.string() + " does not exist");
}

int cmd_coeffs(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    const FormSpec spec = FormSpec::canonical(config.m);
    CoeffSeries series;
    bool agreement_checked = false;
    if (config.strategy == StrategyChoice::both) {
        series = batch_series(config.limit, spec, Strategy::recurrence);
        const CoeffSeries other = batch_series(config.limit, spec, Strategy::lattice);
        agreement_checked = true;
        for (std::uint64_t n = 1; n <= config.limit; ++n) {
            if (series[n] != other[n]) {
                err << "strategy mismatch at n = " << n << ": recurrence " << series[n] << ", lattice "
                    << other[n] << '\n';
                return exit_mismatch;
            }
        }
    } else {
        series = batch_series(config.limit, spec,
                              config.strategy == StrategyChoice::lattice ? Strategy::lattice : Strategy::recurrence);
    }

    const auto stem = "coeffs_" + series_stem(config);
    const auto bin_path = config.out_dir / (stem + ".bin");
    write_atomic(bin_path, [&](std::ostream& os) { write_series_binary(series, os); });
    json files = json::array({bin_path.filename().string()});
    if (config.write_csv) {
        const auto csv_path = config.out_dir / (stem + ".csv");
        write_atomic(csv_path, [&](std::ostream& os) { write_series_csv(series, os); });
        files.push_back(csv_path.filename().string());
    }
    std::uint64_t nonzero = 0;
    for (std::uint64_t n = 1; n <= series.limit; ++n) nonzero += series[n] != 0;

    json summary;
    summary["config"] = config_json(config);
    summary["weight"] = spec.weight();
    summary["level"] = spec.level;
    summary["nonzero_count"] = nonzero;
    summary["strategies_agree"] = agreement_checked;
    summary["files"] = files;
    write_json_file(config.out_dir / (stem + ".json"), summary);
    write_sidecar(bin_path, seconds_since(t0));
    emit_summary(config, summary, out);
    return exit_ok;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& /*err*/) {
    const auto t0 = std::chrono::steady_clock::now();
    const CurveSpec curve{-1};
    const FormSpec spec = FormSpec::canonical(config.m);

    const auto deuring = deuring_check(curve, config.p_max);
    const auto agreement = ap_agreement_check(curve, FormSpec::canonical(1), config.p_max);
    const auto series = batch_series(config.limit, spec, Strategy::recurrence);
    const auto krw = krw_property_check(series, config.p_max);
    const auto inert = inert_power_check(series, config.p_max);
    const auto correspondence = nonvanishing_correspondence(config.m, config.p_max);

    json report;
    report["config"] = config_json(config);
    report["deuring"] = {{"split_checked", deuring.split_checked},
                         {"split_nonzero", deuring.split_nonzero},
                         {"inert_checked", deuring.inert_checked},
                         {"inert_zero", deuring.inert_zero},
                         {"violations", deuring.violations}};
    json mismatches = json::array();
    for (const auto& v : agreement.violations) {
        mismatches.push_back({{"p", v.p}, {"character", cmgaps::to_string(v.character)}, {"point_count", v.point_count}});
    }
    report["ap_agreement"] = {{"checked", agreement.checked}, {"violations", mismatches}};
    json krw_bad = json::array();
    for (const auto& v : krw.violations) krw_bad.push_back({{"p", v.p}, {"r", v.r}});
    report["krw"] = {{"series_limit", series.limit},
                     {"primes_checked", krw.primes_checked},
                     {"hypothesis_false", krw.hypothesis_false},
                     {"powers_checked", krw.powers_checked},
                     {"violations", krw_bad}};
    json inert_bad = json::array();
    for (const auto& v : inert.violations) inert_bad.push_back({{"q", v.p}, {"k", v.r}});
    report["inert_powers"] = {{"checked", inert.checked}, {"violations", inert_bad}};
    report["nonvanishing"] = {{"m", correspondence.power_m},
                              {"checked", correspondence.checked},
                              {"zero_count", correspondence.zero_count},
                              {"violations", correspondence.violations}};
    const bool ok = deuring.ok() && agreement.ok() && krw.ok() && inert.ok() && correspondence.ok();
    report["ok"] = ok;

    const auto path = config.out_dir / ("verify_m" + std::to_string(config.m) + "_p" + std::to_string(config.p_max) + ".json");
    write_json_file(path, report);
    write_sidecar(path, seconds_since(t0));
    emit_summary(config, report, out);
    return ok ? exit_ok : exit_violation;
}

int cmd_gaps(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    CoeffSeries series;
    if (config.series_path) {
        std::ifstream f(*config.series_path, std::ios::binary);
        if (!f) throw contract_error("cannot read series file " + config.series_path->string());
        series = read_series_binary(f);
        if (series.form.power_m != config.m)
            throw contract_error("series file holds m = " + std::to_string(series.form.power_m));
    } else {
        series = batch_series(config.limit, FormSpec::canonical(config.m),
                              config.strategy == StrategyChoice::lattice ? Strategy::lattice : Strategy::recurrence);
    }
    RunConfig resolved = config;
    resolved.limit = series.limit;

    const GapScan scan = max_gap_scan(series, config.n0);
    json summary;
    summary["config"] = config_json(resolved);
    summary["m"] = config.m;
    summary["limit"] = series.limit;
    summary["n0"] = config.n0;
    summary["runs"] = scan.records.size();
    summary["max_length"] = scan.max_length;
    summary["max_ratio"] = scan.max_ratio;
    summary["argmax_start"] = scan.argmax_start;
    summary["truncated_tail"] =
        scan.truncated_tail ? json{{"start", scan.truncated_tail->start}, {"length", scan.truncated_tail->length}}
                            : json(nullptr);
    if (config.m > 1) {
        // f_{Psi^m} and the newform g_m may differ at indices sharing a factor with the level
        summary["conclusions_restricted_to_odd_n"] = true;
    }

    int code = exit_ok;
    std::optional<BoundReport> bound;
    if (config.C) {
        bound = bound_check(scan, *config.C, config.n0);
    } else if (config.calibrate_prefix) {
        const std::uint64_t prefix = *config.calibrate_prefix;
        const double calibrated = max_ratio_between(scan, config.n0, prefix);
        summary["calibrated_C"] = calibrated;
        if (calibrated > 0.0) {
            bound = bound_check(scan, config.slack * calibrated, std::max(config.n0, prefix + 1));
        } else {
            err << "no complete runs in the calibration window; bound check skipped\n";
        }
        summary["validation_max_ratio"] = max_ratio_between(scan, prefix + 1, series.limit);
    }
    if (bound) {
        json witnesses = json::array();
        for (const auto& r : bound->violations) {
            witnesses.push_back({{"start", r.start}, {"length", r.length}, {"ratio", r.ratio}});
        }
        summary["bound_check"] = {{"C", bound->C},
                                  {"n0", bound->n0},
                                  {"checked", bound->checked},
                                  {"violations", witnesses}};
        if (!bound->ok()) code = exit_violation;
    }

    const auto stem = "gaps_" + series_stem(resolved);
    const auto csv_path = config.out_dir / (stem + ".csv");
    write_atomic(csv_path, [&](std::ostream& os) {
        os << "start,length,ratio\n";
        for (const auto& r : scan.records) os << r.start << ',' << r.length << ',' << format_double(r.ratio) << '\n';
    });
    write_json_file(config.out_dir / (stem + ".json"), summary);
    write_sidecar(csv_path, seconds_since(t0));
    emit_summary(config, summary, out);
    return code;
}

int cmd_intervals(const RunConfig& config, std::ostream& out, std::ostream& /*err*/) {
    const auto t0 = std::chrono::steady_clock::now();
    const IntervalScan scan = interval_constant_scan(config.x_lo, config.x_hi, config.N, config.stride, config.top);
    json summary;
    summary["config"] = config_json(config);
    summary["N"] = scan.N;
    summary["X_lo"] = scan.X_lo;
    summary["X_hi"] = scan.X_hi;
    summary["evaluated"] = scan.evaluated;
    summary["c_emp"] = scan.c_emp;
    summary["argmax_X"] = scan.argmax_X;
    summary["argmax_m"] = scan.argmax_m;
    summary["histogram_bin_width"] = histogram_bin_width;
    summary["histogram"] = scan.histogram;

    const auto stem = "intervals_N" + std::to_string(config.N) + "_" + std::to_string(config.x_lo) + "_" +
                      std::to_string(config.x_hi) + "_s" + std::to_string(config.stride);
    const auto csv_path = config.out_dir / (stem + ".csv");
    write_atomic(csv_path, [&](std::ostream& os) {
        os << "X,m,gap,ratio\n";
        for (const auto& w : scan.top) os << w.X << ',' << w.m << ',' << (w.m - w.X) << ',' << format_double(w.ratio) << '\n';
    });
    write_json_file(config.out_dir / (stem + ".json"), summary);
    write_sidecar(csv_path, seconds_since(t0));
    emit_summary(config, summary, out);
    return exit_ok;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_config;
    }
    try {
        switch (config.command) {
            case Command::coeffs: return cmd_coeffs(config, out, err);
            case Command::verify: return cmd_verify(config, out, err);
            case Command::gaps: return cmd_gaps(config, out, err);
            case Command::intervals: return cmd_intervals(config, out, err);
        }
    } catch (const overflow_error& e) {
        err << "error: " << e.what() << " (exact range exceeded)\n";
        return exit_config;
    } catch (const budget_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const contract_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_mismatch;
    }
    return exit_config;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"cmgaps: coefficients and gap statistics of CM eigenforms attached to Hecke characters of Q(i)"};
    app.require_subcommand(1);
    RunConfig config;

    std::string format = "json";
    std::string strategy = "recurrence";
    std::string out_dir = ".";
    std::optional<std::uint64_t> limit_opt;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--m", config.m, "odd power of the character (weight m+1)");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--format", format, "stdout summary format")->check(CLI::IsMember({"csv", "json"}));
    };

    auto* coeffs = app.add_subcommand("coeffs", "compute and export a coefficient series");
    add_common(coeffs);
    coeffs->add_option("--limit", config.limit, "series length X")->required();
    coeffs->add_option("--strategy", strategy)->check(CLI::IsMember({"recurrence", "lattice", "both"}));
    coeffs->add_flag("!--no-csv", config.write_csv, "skip the CSV export");

    auto* verify = app.add_subcommand("verify", "run the character / point-count / Hecke property suites");
    add_common(verify);
    verify->add_option("--pmax", config.p_max, "prime bound");
    verify->add_option("--limit", limit_opt, "series length used for the prime-power checks (default 10^6)");

    auto* gaps = app.add_subcommand("gaps", "scan zero-runs and test the n^{1/4} bound");
    add_common(gaps);
    gaps->add_option("--limit", config.limit, "series length X");
    gaps->add_option("--n0", config.n0, "runs starting below n0 are excluded from the statistics");
    gaps->add_option("--C", config.C, "check length <= C * start^{1/4}");
    gaps->add_option("--calibrate-prefix", config.calibrate_prefix, "calibrate C on runs with start <= P");
    gaps->add_option("--slack", config.slack, "validation bound is slack * calibrated C");
    gaps->add_option("--strategy", strategy)->check(CLI::IsMember({"recurrence", "lattice"}));
    gaps->add_option("--series", config.series_path, "read the series from a .bin file");

    auto* intervals = app.add_subcommand("intervals", "short-interval constant scan for sums of two squares");
    add_common(intervals);
    intervals->add_option("--N", config.N, "coprimality modulus");
    intervals->add_option("--xlo", config.x_lo);
    intervals->add_option("--xhi", config.x_hi);
    intervals->add_option("--stride", config.stride, "1 = exhaustive");
    intervals->add_option("--top", config.top, "number of witnesses in the CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config;
    }

    if (coeffs->parsed()) config.command = Command::coeffs;
    if (verify->parsed()) {
        config.command = Command::verify;
        config.limit = limit_opt.value_or(1'000'000);
    }
    if (gaps->parsed()) config.command = Command::gaps;
    if (intervals->parsed()) config.command = Command::intervals;
    config.format = format == "csv" ? Format::csv : Format::json;
    config.strategy = strategy == "both"      ? StrategyChoice::both
                      : strategy == "lattice" ? StrategyChoice::lattice
                                              : StrategyChoice::recurrence;
    config.out_dir = out_dir;
    return run(config, out, err);
}

}  // namespace cmgaps::cli
