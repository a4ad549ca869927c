#pragma once

// Command-line front end. run() is separate from main() so tests can drive
// it with captured streams.
//
// Exit codes: 0 success, 1 usage/input error, 2 evaluation error,
// 3 failed DA pair verdict. Errors go to stderr as one line:
//   error[<code>]: <message>
// with code one of usage, parse, file, data, eval, verify.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "statcalc/statcalc.hpp"

namespace statcalc::cli {

inline constexpr std::uint64_t kDefaultSeed = 20140601;
inline constexpr const char* kSeedEnv = "STATCALC_SEED";

class FileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { Text, Json, Csv };

inline std::uint64_t default_seed() {
    if (const char* env = std::getenv(kSeedEnv)) {
        std::string s(env);
        try {
            std::size_t used = 0;
            unsigned long long v = std::stoull(s, &used, 0);
            if (used == s.size()) return v;
        } catch (const std::exception&) {
        }
        throw UsageError(std::string(kSeedEnv) + " is not an unsigned integer: '" + s + "'");
    }
    return kDefaultSeed;
}

inline double real_arg(const std::string& text, const char* flag) {
    try {
        return parse_constant(text);
    } catch (const ParseError& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    } catch (const EvalError& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

inline std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) parts.push_back(item);
    return parts;
}

inline std::size_t count_arg(const std::string& text, const char* flag) {
    double v = real_arg(text, flag);
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e12)
        throw UsageError(std::string(flag) + ": expected a positive integer, got '" + text + "'");
    return static_cast<std::size_t>(v);
}

inline Expr expr_arg(const std::string& text, const char* flag) {
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw ParseError(e.position(), e.expected(), std::string(flag) + " '" + text + "': " + e.what());
    }
}

inline Strategy strategy_arg(const std::string& text) {
    auto s = strategy_from_name(text);
    if (!s) throw UsageError("unknown strategy '" + text + "' (uniform, random, convenience)");
    return *s;
}

inline TabularFunction read_table(const std::string& path) {
    if (path == "-") return load_csv(std::cin, "stdin");
    std::ifstream in(path);
    if (!in) throw FileError("cannot open '" + path + "'");
    return load_csv(in, path);
}

struct PlanArgs {
    std::string a = "0", b = "1", strategy = "uniform", n = "100", points;
    std::optional<std::uint64_t> seed;

    void add_to(CLI::App* sub) {
        sub->add_option("--a", a, "Left end of the interval")->capture_default_str();
        sub->add_option("--b", b, "Right end of the interval")->capture_default_str();
        sub->add_option("--strategy", strategy, "uniform | random | convenience")->capture_default_str();
        sub->add_option("--n", n, "Sample count")->capture_default_str();
        sub->add_option("--seed", seed, "Seed for random sampling");
        sub->add_option("--points", points, "Comma-separated points for convenience sampling");
    }

    SamplePlan plan() const {
        Interval iv(real_arg(a, "--a"), real_arg(b, "--b"));
        switch (strategy_arg(strategy)) {
            case Strategy::Uniform: return SamplePlan::uniform(iv, count_arg(n, "--n"));
            case Strategy::Random: return SamplePlan::random(iv, count_arg(n, "--n"), seed.value_or(default_seed()));
            case Strategy::Convenience: {
                std::vector<double> pts;
                for (const auto& p : split_list(points)) pts.push_back(real_arg(p, "--points"));
                if (pts.empty()) throw UsageError("convenience sampling needs --points");
                return SamplePlan::convenience(iv, std::move(pts));
            }
        }
        throw UsageError("unreachable strategy");
    }
};

inline void print_mean_text(std::ostream& out, const MeanEstimate& m) {
    out << "mean          " << format_real(m.mean) << '\n'
        << "n             " << m.n << '\n'
        << "sample_stddev " << format_real(m.sample_stddev) << '\n'
        << "std_error     " << format_real(m.std_error) << '\n';
}

inline void print_mean(std::ostream& out, Format fmt, const MeanEstimate& m) {
    if (fmt == Format::Json) {
        out << json(m).dump(2) << '\n';
    } else if (fmt == Format::Csv) {
        out << "mean,n,sample_stddev,std_error\n"
            << format_real(m.mean) << ',' << m.n << ',' << format_real(m.sample_stddev) << ','
            << format_real(m.std_error) << '\n';
    } else {
        print_mean_text(out, m);
    }
}

inline void print_integral(std::ostream& out, Format fmt, const IntegralResult& r) {
    if (fmt == Format::Json) {
        out << json(r).dump(2) << '\n';
    } else if (fmt == Format::Csv) {
        out << "value,a,b,error_bar,mean,n,sample_stddev,std_error\n"
            << format_real(r.value) << ',' << format_real(r.interval.a()) << ',' << format_real(r.interval.b())
            << ',' << format_real(r.error_bar) << ',' << format_real(r.mean.mean) << ',' << r.mean.n << ','
            << format_real(r.mean.sample_stddev) << ',' << format_real(r.mean.std_error) << '\n';
    } else {
        out << "integral      " << format_real(r.value) << '\n'
            << "interval      [" << format_real(r.interval.a()) << ", " << format_real(r.interval.b()) << "]\n"
            << "error_bar     " << format_real(r.error_bar) << '\n';
        print_mean_text(out, r.mean);
    }
}

inline void print_convergence_text(std::ostream& out, const ConvergenceReport& r) {
    auto pad = [](std::string s, std::size_t w) {
        if (s.size() < w) s.insert(0, w - s.size(), ' ');
        return s;
    };
    out << "sample means of " << r.function << " on [" << format_real(r.interval.a()) << ", "
        << format_real(r.interval.b()) << "]\n";
    out << pad("n", 10);
    for (std::size_t n : r.sizes) out << pad(std::to_string(n), 10);
    out << '\n';
    for (const auto& row : r.rows) {
        out << pad(row.label, 10);
        for (double d : row.display) out << pad(format_fixed(d, kDisplayDecimals), 10);
        out << '\n';
    }
    if (r.reference) out << "reference " << format_real(*r.reference) << '\n';
}

inline void print_da_text(std::ostream& out, const DAPairReport& r) {
    out << "pair          (" << r.f << ", " << r.F << ")\n"
        << "interval      [" << format_real(r.interval.a()) << ", " << format_real(r.interval.b()) << "]\n"
        << "grid          " << r.grid_count << " points, n=" << r.n << " per integral\n"
        << "derivative    max error " << format_real(r.max_derivative_error) << " at x="
        << format_real(r.worst_derivative_x) << " (tol " << format_real(r.deriv_tol) << ") "
        << (r.derivative_ok ? "PASS" : "FAIL") << '\n'
        << "integral      max error " << format_real(r.max_integral_error) << " at x="
        << format_real(r.worst_integral_x) << " (tol " << format_real(r.int_tol) << ") "
        << (r.integral_ok ? "PASS" : "FAIL") << '\n';
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Mean-based integrals, antiderivatives and derivatives", "statcalc"};
    app.require_subcommand(1);
    std::string format = "text";
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "text | json | csv")
            ->check(CLI::IsMember({"text", "json", "csv"}))
            ->capture_default_str();
    };

    // mean
    auto* mean_cmd = app.add_subcommand("mean", "Arithmetic mean of f over a sample, or of a data file");
    std::string mean_fn, mean_data;
    bool weighted = false;
    PlanArgs mean_plan;
    auto* fn_opt = mean_cmd->add_option("--fn", mean_fn, "Expression in x");
    auto* data_opt = mean_cmd->add_option("--data", mean_data, "CSV file (x,y), '-' for stdin");
    fn_opt->excludes(data_opt);
    mean_plan.add_to(mean_cmd);
    mean_cmd->add_flag("--weighted", weighted, "Spacing-weighted mean for convenience samples and data");
    add_format(mean_cmd);

    // integrate
    auto* int_cmd = app.add_subcommand("integrate", "I[f,a,b] = (b-a) * mean of f");
    std::string int_fn;
    PlanArgs int_plan;
    int_cmd->add_option("--fn", int_fn, "Expression in x")->required();
    int_plan.add_to(int_cmd);
    int_cmd->add_flag("--weighted", weighted, "Spacing-weighted mean for convenience samples");
    add_format(int_cmd);

    // antiderivative
    auto* anti_cmd = app.add_subcommand("antiderivative", "F(x) = I[f,a,x] on a uniform grid");
    std::string anti_fn, anti_a = "0", anti_xmax, anti_grid = "11", anti_n = "100000", anti_strategy = "uniform";
    std::optional<std::uint64_t> anti_seed;
    anti_cmd->add_option("--fn", anti_fn, "Expression in x")->required();
    anti_cmd->add_option("--a", anti_a, "Base point")->capture_default_str();
    anti_cmd->add_option("--x-max", anti_xmax, "Last grid point")->required();
    anti_cmd->add_option("--grid", anti_grid, "Number of grid points")->capture_default_str();
    anti_cmd->add_option("--n", anti_n, "Samples per grid point")->capture_default_str();
    anti_cmd->add_option("--strategy", anti_strategy, "uniform | random")->capture_default_str();
    anti_cmd->add_option("--seed", anti_seed, "Seed for random sampling");
    add_format(anti_cmd);

    // ftc
    auto* ftc_cmd = app.add_subcommand("ftc", "I[f,c,d] = F(d) - F(c) for a known antiderivative F");
    std::string ftc_F, ftc_c, ftc_d;
    ftc_cmd->add_option("--F", ftc_F, "Antiderivative expression")->required();
    ftc_cmd->add_option("--c", ftc_c, "Lower limit")->required();
    ftc_cmd->add_option("--d", ftc_d, "Upper limit")->required();
    add_format(ftc_cmd);

    // derivative
    auto* der_cmd = app.add_subcommand("derivative", "Derivative as the limit of graphic means");
    std::string der_fn, der_at, der_h0 = "0.1", der_ratio = "0.5", der_tol = "1e-8", der_iter = "40";
    bool central = false;
    der_cmd->add_option("--fn", der_fn, "Expression in x")->required();
    der_cmd->add_option("--at", der_at, "Point t1")->required();
    der_cmd->add_option("--h0", der_h0, "First step")->capture_default_str();
    der_cmd->add_option("--ratio", der_ratio, "Step shrink factor")->capture_default_str();
    der_cmd->add_option("--tol", der_tol, "Successive slope tolerance")->capture_default_str();
    der_cmd->add_option("--max-iter", der_iter, "Iteration cap")->capture_default_str();
    der_cmd->add_flag("--central", central, "Use symmetric secants instead of forward secants");
    add_format(der_cmd);

    // dapair
    auto* da_cmd = app.add_subcommand("dapair", "Verify a derivative/antiderivative pair both ways");
    std::string da_f, da_F, da_builtin, da_a, da_b, da_grid = "25", da_n = "100000", da_dtol = "1e-4",
                                                  da_itol = "2e-3";
    da_cmd->add_option("--f", da_f, "Derivative expression");
    da_cmd->add_option("--F", da_F, "Antiderivative expression");
    da_cmd->add_option("--builtin", da_builtin, "Check a built-in pair by name, or 'all'");
    da_cmd->add_option("--a", da_a, "Left end of the interval");
    da_cmd->add_option("--b", da_b, "Right end of the interval");
    da_cmd->add_option("--grid", da_grid, "Grid points")->capture_default_str();
    da_cmd->add_option("--n", da_n, "Uniform samples per integral")->capture_default_str();
    da_cmd->add_option("--deriv-tol", da_dtol, "Derivative tolerance")->capture_default_str();
    da_cmd->add_option("--int-tol", da_itol, "Integral tolerance")->capture_default_str();
    add_format(da_cmd);

    // converge
    auto* conv_cmd = app.add_subcommand("converge", "Sample means for growing n (uniform and random trials)");
    std::string conv_fn, conv_a = "0", conv_b = "1", conv_sizes = "10,100,1000,10000,100000,1000000",
                         conv_strategies = "uniform,random", conv_trials = "3", conv_ref;
    std::optional<std::uint64_t> conv_seed;
    conv_cmd->add_option("--fn", conv_fn, "Expression in x")->required();
    conv_cmd->add_option("--a", conv_a, "Left end")->capture_default_str();
    conv_cmd->add_option("--b", conv_b, "Right end")->capture_default_str();
    conv_cmd->add_option("--sizes", conv_sizes, "Comma-separated sample sizes")->capture_default_str();
    conv_cmd->add_option("--strategies", conv_strategies, "Comma-separated: uniform,random")->capture_default_str();
    conv_cmd->add_option("--trials", conv_trials, "Random trials")->capture_default_str();
    conv_cmd->add_option("--seed", conv_seed, "Base seed for the random trials");
    conv_cmd->add_option("--reference", conv_ref, "Known true mean, reported alongside");
    add_format(conv_cmd);

    // table
    auto* table_cmd = app.add_subcommand("table", "Mean or integral of a data file");
    std::string table_action, table_file;
    table_cmd->add_option("action", table_action, "mean | integrate")
        ->required()
        ->check(CLI::IsMember({"mean", "integrate"}));
    table_cmd->add_option("file", table_file, "CSV file, '-' for stdin")->required();
    table_cmd->add_flag("--weighted", weighted, "Spacing-weighted mean");
    add_format(table_cmd);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error[usage]: " << e.what() << '\n';
        return 1;
    }

    const Format fmt = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text;
    MeanOptions mopts{weighted};

    try {
        if (mean_cmd->parsed()) {
            if (!mean_data.empty()) {
                print_mean(out, fmt, tabular_mean(read_table(mean_data), mopts));
            } else {
                if (mean_fn.empty()) throw UsageError("mean needs --fn or --data");
                print_mean(out, fmt, function_mean(expr_arg(mean_fn, "--fn"), mean_plan.plan(), mopts));
            }
        } else if (int_cmd->parsed()) {
            print_integral(out, fmt, integral(expr_arg(int_fn, "--fn"), int_plan.plan(), mopts));
        } else if (anti_cmd->parsed()) {
            PlanTemplate tpl{strategy_arg(anti_strategy), count_arg(anti_n, "--n"), anti_seed.value_or(default_seed())};
            auto grid = antiderivative_grid(expr_arg(anti_fn, "--fn"), real_arg(anti_a, "--a"),
                                            real_arg(anti_xmax, "--x-max"), count_arg(anti_grid, "--grid"), tpl);
            if (fmt == Format::Json) {
                out << json(grid).dump(2) << '\n';
            } else if (fmt == Format::Csv) {
                write_grid_csv(grid, out);
            } else {
                out << "# x F\n";
                for (std::size_t j = 0; j < grid.abscissae.size(); ++j)
                    out << format_real(grid.abscissae[j]) << ' ' << format_real(grid.values[j]) << '\n';
            }
        } else if (ftc_cmd->parsed()) {
            Expr F = expr_arg(ftc_F, "--F");
            double c = real_arg(ftc_c, "--c"), d = real_arg(ftc_d, "--d");
            double v = ftc_evaluate(F, c, d);
            if (fmt == Format::Json)
                out << json{{"F", F.str()}, {"c", c}, {"d", d}, {"value", v}}.dump(2) << '\n';
            else if (fmt == Format::Csv)
                out << "F,c,d,value\n\"" << F.str() << "\"," << format_real(c) << ',' << format_real(d) << ','
                    << format_real(v) << '\n';
            else
                out << format_real(v) << '\n';
        } else if (der_cmd->parsed()) {
            DerivativeOptions dopt;
            dopt.h0 = real_arg(der_h0, "--h0");
            dopt.ratio = real_arg(der_ratio, "--ratio");
            dopt.tol = real_arg(der_tol, "--tol");
            dopt.max_iter = count_arg(der_iter, "--max-iter");
            dopt.mode = central ? SecantMode::Central : SecantMode::Forward;
            auto est = derivative_at(expr_arg(der_fn, "--fn"), real_arg(der_at, "--at"), dopt);
            if (fmt == Format::Json) {
                out << json(est).dump(2) << '\n';
            } else if (fmt == Format::Csv) {
                out << "k,h,slope\n";
                for (std::size_t k = 0; k < est.iterates.size(); ++k)
                    out << k << ',' << format_real(est.iterates[k].h) << ',' << format_real(est.iterates[k].slope)
                        << '\n';
            } else {
                out << "k  h  slope\n";
                for (std::size_t k = 0; k < est.iterates.size(); ++k)
                    out << k << "  " << format_real(est.iterates[k].h) << "  "
                        << format_real(est.iterates[k].slope) << '\n';
                out << "derivative    " << format_real(est.value) << '\n'
                    << "converged     " << (est.converged ? "true" : "false") << '\n'
                    << "delta         " << format_real(est.achieved_delta) << '\n';
            }
        } else if (da_cmd->parsed()) {
            PlanTemplate tpl{Strategy::Uniform, count_arg(da_n, "--n"), 0};
            const std::size_t grid = count_arg(da_grid, "--grid");
            const double dtol = real_arg(da_dtol, "--deriv-tol"), itol = real_arg(da_itol, "--int-tol");
            std::vector<DAPairReport> reports;
            if (!da_builtin.empty()) {
                for (const auto& entry : builtin_da_table())
                    if (da_builtin == "all" || entry.name == da_builtin || entry.family == da_builtin)
                        reports.push_back(verify_da_pair(entry.f, entry.F, entry.verify_interval, grid, dtol, itol, tpl));
                if (reports.empty()) throw UsageError("no built-in pair named '" + da_builtin + "'");
            } else {
                if (da_f.empty() || da_F.empty() || da_a.empty() || da_b.empty())
                    throw UsageError("dapair needs --f, --F, --a and --b (or --builtin)");
                Interval iv(real_arg(da_a, "--a"), real_arg(da_b, "--b"));
                reports.push_back(
                    verify_da_pair(expr_arg(da_f, "--f"), expr_arg(da_F, "--F"), iv, grid, dtol, itol, tpl));
            }
            if (fmt == Format::Json) {
                out << (reports.size() == 1 ? json(reports.front()) : json(reports)).dump(2) << '\n';
            } else if (fmt == Format::Csv) {
                out << "f,F,a,b,max_derivative_error,derivative_ok,max_integral_error,integral_ok\n";
                for (const auto& r : reports)
                    out << '"' << r.f << "\",\"" << r.F << "\"," << format_real(r.interval.a()) << ','
                        << format_real(r.interval.b()) << ',' << format_real(r.max_derivative_error) << ','
                        << r.derivative_ok << ',' << format_real(r.max_integral_error) << ',' << r.integral_ok
                        << '\n';
            } else {
                for (const auto& r : reports) print_da_text(out, r);
            }
            std::size_t failed = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return !r.ok(); });
            if (failed) {
                err << "error[verify]: " << failed << " of " << reports.size() << " pair(s) failed verification\n";
                return 3;
            }
        } else if (conv_cmd->parsed()) {
            std::vector<std::size_t> sizes;
            for (const auto& s : split_list(conv_sizes)) sizes.push_back(count_arg(s, "--sizes"));
            std::vector<Strategy> strategies;
            for (const auto& s : split_list(conv_strategies)) strategies.push_back(strategy_arg(s));
            std::optional<double> ref;
            if (!conv_ref.empty()) ref = real_arg(conv_ref, "--reference");
            auto report = convergence_study(expr_arg(conv_fn, "--fn"),
                                            Interval(real_arg(conv_a, "--a"), real_arg(conv_b, "--b")), sizes,
                                            strategies, count_arg(conv_trials, "--trials"),
                                            conv_seed.value_or(default_seed()), ref);
            if (fmt == Format::Json)
                out << json(report).dump(2) << '\n';
            else if (fmt == Format::Csv)
                write_convergence_csv(report, out);
            else
                print_convergence_text(out, report);
        } else if (table_cmd->parsed()) {
            TabularFunction tf = read_table(table_file);
            if (table_action == "mean")
                print_mean(out, fmt, tabular_mean(tf, mopts));
            else
                print_integral(out, fmt, tabular_integral(tf, mopts));
        }
    } catch (const EvalError& e) {
        err << "error[eval]: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << "error[parse]: " << e.what() << '\n';
        return 1;
    } catch (const FileError& e) {
        err << "error[file]: " << e.what() << '\n';
        return 1;
    } catch (const DataError& e) {
        err << "error[data]: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error[usage]: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace statcalc::cli
