#include "varsep/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "varsep/errors.hpp"
#include "varsep/expr.hpp"
#include "varsep/json_io.hpp"
#include "varsep/sep_exact.hpp"
#include "varsep/sep_numeric.hpp"

namespace varsep::cli {

namespace {

struct Options {
    std::string expression;
    std::string vars;
    std::string format = "json";
    double tolerance = kDefaultTolerance;
    std::vector<std::string> grids;
    std::uint64_t seed = 0;
    std::size_t budget = kDefaultSampleBudget;
    std::string strategy = "cartesian";
};

class Usage : public Error {
public:
    using Error::Error;
};

bool valid_identifier(const std::string& name) {
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return (std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_') && static_cast<unsigned char>(c) < 0x80;
    });
}

VariableList resolve_vars(const ExprNode& expr, const std::string& override_list) {
    if (override_list.empty()) return variables_in_order(expr);
    VariableList vars;
    std::stringstream ss(override_list);
    for (std::string item; std::getline(ss, item, ',');) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!valid_identifier(item) || function_from_name(item)) throw Usage("invalid variable name '" + item + "' in --vars");
        if (std::find(vars.begin(), vars.end(), item) != vars.end()) throw Usage("duplicate variable '" + item + "' in --vars");
        vars.push_back(item);
    }
    return vars;
}

std::string read_expression(const std::string& text, std::istream& in) {
    if (text != "-") return text;
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string block_list(const Partition& p, const VariableList& vars) { return p.to_string(vars); }

std::string format_index(const ExponentVector& e) {
    std::string out = "(";
    for (std::size_t i = 0; i < e.size(); ++i) out += (i ? ", " : "") + std::to_string(e[i]);
    return out + ")";
}

struct Input {
    ExprPtr expr;
    VariableList vars;
};

Input load(const Options& opt, std::istream& in) {
    Input input;
    input.expr = parse(read_expression(opt.expression, in));
    input.vars = resolve_vars(*input.expr, opt.vars);
    return input;
}

Polynomial load_polynomial(const Options& opt, std::istream& in, VariableList& vars) {
    Input input = load(opt, in);
    vars = input.vars;
    Polynomial f = lower_to_polynomial(*input.expr, vars);
    if (f.is_zero()) throw DegenerateInput("expression is the zero polynomial");
    return f;
}

int cmd_check(const Options& opt, std::istream& in, std::ostream& out, std::ostream& err) {
    VariableList vars;
    const Polynomial f = load_polynomial(opt, in, vars);
    const Verdict anomalous = anomalous_precheck(f);
    const CriterionResult criterion = coeff_criterion_total(f);
    const SepMatrixReport report = finest_partition(f);

    const bool by_coefficients = criterion.verdict == Verdict::Separable;
    const bool by_matrix = report.partition.is_all_singletons();
    if (by_coefficients != by_matrix) {
        err << "error: coefficient criterion and separability matrix disagree\n";
        return kInternal;
    }

    if (opt.format == "json") {
        Json violation = criterion.violation ? Json(*criterion.violation) : Json(nullptr);
        out << emit_json(Json{{"schema", kSchema},
                              {"vars", vars},
                              {"separable", by_coefficients},
                              {"anomalous", anomalous == Verdict::NotSeparable},
                              {"coefficient_criterion",
                               {{"verdict", std::string(to_string(criterion.verdict))}, {"violation", violation}}},
                              {"matrix_route", {{"blocks", partition_to_json(report.partition, vars)}}}})
            << '\n';
    } else {
        out << (by_coefficients ? "separable" : "not separable") << '\n';
        if (anomalous == Verdict::NotSeparable) out << "leading product monomial is missing\n";
        if (criterion.violation) out << "coefficient criterion fails at " << format_index(*criterion.violation) << '\n';
        out << "finest partition: " << block_list(report.partition, vars) << '\n';
    }
    return by_coefficients ? kSuccess : kNotSeparable;
}

int cmd_separate(const Options& opt, std::istream& in, std::ostream& out) {
    VariableList vars;
    const Polynomial f = load_polynomial(opt, in, vars);
    const SepMatrixReport report = finest_partition(f);
    const Partition& finest = report.partition;

    if (vars.size() >= 2 && finest.block_count() == 1) {
        if (opt.format == "json") {
            out << emit_json(Json{{"schema", kSchema}, {"separable", false}, {"blocks", partition_to_json(finest, vars)}})
                << '\n';
        } else {
            out << "not separable\n";
        }
        return kNotSeparable;
    }

    const SeparationResult result = finest.is_all_singletons() ? separate_total(f) : separate_by_partition(f, finest);
    if (opt.format == "json") {
        out << emit_json(separation_to_json(result, vars)) << '\n';
    } else {
        out << "constant: " << result.constant << '\n';
        for (const auto& bf : result.factors) {
            out << "factor {";
            for (std::size_t k = 0; k < bf.block.size(); ++k) out << (k ? ", " : "") << vars[bf.block[k]];
            out << "}: " << bf.factor.to_string() << '\n';
        }
        out << "verified: " << (result.verified ? "yes" : "no") << '\n';
    }
    return kSuccess;
}

int cmd_partition(const Options& opt, std::istream& in, std::ostream& out) {
    VariableList vars;
    const Polynomial f = load_polynomial(opt, in, vars);
    const SepMatrixReport report = finest_partition(f);
    if (opt.format == "json") {
        out << emit_json(report_to_json(report, vars)) << '\n';
    } else {
        out << block_list(report.partition, vars) << '\n';
    }
    return kSuccess;
}

int cmd_additive(const Options& opt, std::istream& in, std::ostream& out) {
    Input input = load(opt, in);
    const Polynomial f = lower_to_polynomial(*input.expr, input.vars);
    const Verdict verdict = additive_separability(f);
    if (opt.format == "json") {
        out << emit_json(Json{{"schema", kSchema},
                              {"vars", input.vars},
                              {"additively_separable", verdict == Verdict::Separable}})
            << '\n';
    } else {
        out << "additively " << to_string(verdict) << '\n';
    }
    return kSuccess;
}

int cmd_numeric(const Options& opt, std::istream& in, std::ostream& out) {
    Input input = load(opt, in);
    const CompiledExpr f(input.expr, input.vars);

    std::vector<std::vector<double>> coords(input.vars.size());
    for (const auto& spec : opt.grids) {
        auto [name, values] = parse_grid_spec(spec);
        auto it = std::find(input.vars.begin(), input.vars.end(), name);
        if (it == input.vars.end()) throw Usage("--grid names unknown variable '" + name + "'");
        auto& slot = coords[static_cast<std::size_t>(it - input.vars.begin())];
        if (!slot.empty()) throw Usage("--grid given twice for '" + name + "'");
        slot = std::move(values);
    }
    for (auto& slot : coords) {
        if (slot.empty()) slot = linspace(-1.2, 1.2, 9);
    }
    const auto strategy =
        opt.strategy == "random" ? SampleGrid::Strategy::RandomPairs : SampleGrid::Strategy::Cartesian;
    const SampleGrid grid(std::move(coords), strategy, opt.budget, opt.seed);
    const NumericVerdict verdict = numeric_finest_partition(f, grid, opt.tolerance);

    if (opt.format == "json") {
        out << emit_json(numeric_verdict_to_json(verdict)) << '\n';
    } else {
        double worst_cross = 0.0;
        double worst_inner = 0.0;
        for (std::size_t i = 0; i < verdict.vars.size(); ++i) {
            for (std::size_t j = i + 1; j < verdict.vars.size(); ++j) {
                const bool same = verdict.partition.block_of(i) == verdict.partition.block_of(j);
                (same ? worst_inner : worst_cross) = std::max(same ? worst_inner : worst_cross, verdict.residuals[i][j]);
            }
        }
        out << "verdict: " << to_string(verdict.kind) << '\n'
            << "partition: " << block_list(verdict.partition, verdict.vars) << '\n'
            << "max residual across blocks: " << worst_cross << '\n'
            << "max residual within blocks: " << worst_inner << '\n'
            << "tolerance: " << verdict.tolerance << '\n'
            << "samples: " << verdict.samples << " (skipped " << verdict.skipped << ")\n";
    }
    return kSuccess;
}

void add_common(CLI::App* sub, Options& opt) {
    sub->add_option("expression", opt.expression, "Expression, or - to read it from stdin")->required();
    sub->add_option("--vars", opt.vars, "Comma-separated variable order (default: order of first occurrence)");
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Decide and carry out multiplicative separation of variables", "varsep"};
    app.require_subcommand(1, 1);

    auto* check = app.add_subcommand("check", "Total separability by the coefficient criterion and the M_ij route");
    auto* separate = app.add_subcommand("separate", "Constant and monic factors over the finest partition");
    auto* partition = app.add_subcommand("partition", "Finest separating partition of a polynomial");
    auto* additive = app.add_subcommand("additive", "Additive separability of a polynomial");
    auto* numeric = app.add_subcommand("numeric", "Tolerance-based partition detection for any expression");
    for (auto* sub : {check, separate, partition, additive, numeric}) add_common(sub, opt);
    numeric->add_option("--tol", opt.tolerance, "Relative residual tolerance")->check(CLI::NonNegativeNumber);
    numeric->add_option("--grid", opt.grids, "Sample grid per variable: name=start:stop:count");
    numeric->add_option("--seed", opt.seed, "Seed for sampled iteration");
    numeric->add_option("--budget", opt.budget, "Maximum samples per sampling stage")->check(CLI::PositiveNumber);
    numeric->add_option("--strategy", opt.strategy, "Pair iteration strategy")
        ->check(CLI::IsMember({"cartesian", "random"}));

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    if (args.empty()) argv.push_back("varsep");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (check->parsed()) return cmd_check(opt, in, out, err);
        if (separate->parsed()) return cmd_separate(opt, in, out);
        if (partition->parsed()) return cmd_partition(opt, in, out);
        if (additive->parsed()) return cmd_additive(opt, in, out);
        if (numeric->parsed()) return cmd_numeric(opt, in, out);
        err << "error: no subcommand\n";
        return kUsageError;
    } catch (const DegenerateInput& e) {
        err << "error: " << e.what() << '\n';
        return kDegenerate;
    } catch (const VerificationError& e) {
        err << "error: " << e.what() << '\n';
        return kInternal;
    } catch (const NotSeparable& e) {
        err << "error: " << e.what() << '\n';
        return kInternal;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}

}  // namespace varsep::cli
