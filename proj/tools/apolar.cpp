// apolar: command-line front end for the apolarity toolkit.

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace
{

using namespace apolar::cli;

// Emits a batch of reports; one form gives one document, --file gives a JSON array.
int emit(const std::vector<Outcome> &outs, bool as_json, bool batch)
{
    int code = ok;
    for (const auto &o : outs) {
        code = std::max(code, o.exit_code);
        if (o.report.contains("error")) {
            std::cerr << "error: ";
            if (batch) {
                std::cerr << o.report["input"].get<std::string>() << ": ";
            }
            std::cerr << o.report["error"]["message"].get<std::string>() << '\n';
        }
    }
    if (as_json) {
        if (batch) {
            json arr = json::array();
            for (const auto &o : outs) {
                arr.push_back(o.report);
            }
            std::cout << arr.dump(2) << '\n';
        } else {
            std::cout << outs.front().report.dump(2) << '\n';
        }
    } else {
        bool first = true;
        for (const auto &o : outs) {
            if (o.report.contains("error")) {
                continue;
            }
            if (!first) {
                std::cout << '\n';
            }
            first = false;
            std::cout << render_text(o.report);
        }
    }
    return code;
}

template <typename Fn>
int run_on_forms(const FormSource &src, const GlobalOptions &opts, const std::string &command, Fn &&fn)
{
    std::vector<std::string> texts;
    try {
        texts = source_texts(src);
    } catch (const apolar::InputError &e) {
        Outcome o{base_report(command, ""), input_error};
        o.report["error"] = error_json(e, input_error);
        return emit({o}, opts.json, false);
    }
    std::vector<Outcome> outs;
    for (const auto &t : texts) {
        outs.push_back(fn(t));
    }
    if (outs.empty()) {
        Outcome o{base_report(command, ""), input_error};
        o.report["error"] = error_json(apolar::InputError("form file contains no forms"), input_error);
        return emit({o}, opts.json, false);
    }
    return emit(outs, opts.json, src.file.has_value());
}

void add_form_source(CLI::App *sub, FormSource &src)
{
    sub->add_option("--form", src.form, "Homogeneous form, e.g. \"x0^3 + x1^3 + x2^3\"");
    sub->add_option("--file", src.file, "File with one form per line ('#' starts a comment)");
    sub->add_option("--nvars", src.nvars, "Number of variables (default: largest index used + 1)");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Apolarity toolkit for ternary and higher forms in sigma_3 of a Veronese variety"};
    app.require_subcommand(1);

    GlobalOptions opts;
    app.add_flag("--json", opts.json, "Machine-readable JSON output");
    app.add_option("--seed", opts.seed, "Seed for randomized steps (line sampling in the classifier)");
    app.add_option("--jobs", opts.jobs, "Worker threads for verify-table")->check(CLI::Range(1u, 256u));
    app.add_flag("--force", opts.force, "Allow verify-table outside the default ranges");
    app.add_flag("--timing", opts.timing, "Report elapsed_ms");

    FormSource src;
    std::optional<unsigned> k;
    bool entries = false;
    bool basis = false;
    std::string net;
    unsigned d = 0;
    unsigned n = 0;
    std::string kind;
    std::string alpha = "1";
    std::string beta = "1";
    std::string d_range = "3..7";
    std::string n_range = "2..4";

    auto *flatten = app.add_subcommand("flatten", "Catalecticant matrix phi_{d-k,k}(f) and its rank");
    add_form_source(flatten, src);
    flatten->add_option("--k", k, "Flattening index, 1 <= k <= d-1 (default floor(d/2))");
    flatten->add_flag("--entries", entries, "Print the matrix entries");

    auto *analyze = app.add_subcommand("analyze", "Full report: ranks, memberships, orbit class, smoothness");
    add_form_source(analyze, src);

    auto *classify = app.add_subcommand("classify", "Orbit class of a point of sigma_3");
    add_form_source(classify, src);

    auto *conormal = app.add_subcommand("conormal", "Conormal space dimension and smoothness");
    add_form_source(conormal, src);
    conormal->add_flag("--basis", basis, "Print a basis of the conormal space");

    auto *member = app.add_subcommand("membership", "Secant variety memberships from flattening ranks");
    add_form_source(member, src);

    auto *hilbert = app.add_subcommand("hilbert", "Hilbert function of the ideal generated by a squared net");
    hilbert->add_option("--net", net, "unmixed | mixed")->required();
    hilbert->add_option("--d", d, "Degree, 2 <= d <= 12")->required();

    auto *canonical = app.add_subcommand("canonical", "Normal form of an orbit");
    canonical->add_option("--kind", kind, "fermat | unmixed | mixed | degenerate")->required();
    canonical->add_option("--d", d, "Degree")->required();
    canonical->add_option("--n", n, "Projective dimension (n+1 variables)")->required();
    canonical->add_option("--alpha", alpha, "Degenerate-form coefficient alpha (rational)");
    canonical->add_option("--beta", beta, "Degenerate-form coefficient beta (rational)");

    auto *table = app.add_subcommand("verify-table", "Check smoothness at every normal form over a (d, n) range");
    table->add_option("--d-range", d_range, "Degrees a..b (default 3..7)");
    table->add_option("--n-range", n_range, "Dimensions a..b (default 2..4)");

    for (auto *sub : app.get_subcommands({})) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : input_error;
    }

    if (flatten->parsed()) {
        return run_on_forms(src, opts, "flatten",
                            [&](const std::string &t) { return cmd_flatten(t, src.nvars, k, entries, opts); });
    }
    if (analyze->parsed()) {
        return run_on_forms(src, opts, "analyze", [&](const std::string &t) { return cmd_analyze(t, src.nvars, opts); });
    }
    if (classify->parsed()) {
        return run_on_forms(src, opts, "classify",
                            [&](const std::string &t) { return cmd_classify(t, src.nvars, opts); });
    }
    if (conormal->parsed()) {
        return run_on_forms(src, opts, "conormal",
                            [&](const std::string &t) { return cmd_conormal(t, src.nvars, basis, opts); });
    }
    if (member->parsed()) {
        return run_on_forms(src, opts, "membership",
                            [&](const std::string &t) { return cmd_membership(t, src.nvars, opts); });
    }
    if (hilbert->parsed()) {
        return emit({cmd_hilbert(net, d, opts)}, opts.json, false);
    }
    if (canonical->parsed()) {
        return emit({cmd_canonical(kind, d, n, alpha, beta, opts)}, opts.json, false);
    }
    return emit({cmd_verify_table(d_range, n_range, opts)}, opts.json, false);
}
