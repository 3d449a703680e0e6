#ifndef APOLAR_TOOLS_COMMANDS_HPP
#define APOLAR_TOOLS_COMMANDS_HPP

#include <chrono>
#include <cstdint>
#include <exception>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <apolar/apolar.hpp>

namespace apolar::cli
{

using json = nlohmann::ordered_json;

enum ExitCode : int { ok = 0, mismatch = 1, input_error = 2, precondition_error = 3 };

struct GlobalOptions {
    bool json = false;
    std::uint64_t seed = detail::classify_default_seed;
    unsigned jobs = 1;
    bool force = false;
    bool timing = false;
};

// Output of one command invocation on one input.
struct Outcome {
    json report;
    int exit_code = ok;
};

// Where forms come from: --form or --file.
struct FormSource {
    std::optional<std::string> form;
    std::optional<std::string> file;
    std::size_t nvars = 0;
};

// Text lines of a --file input: blank lines and '#' comments are skipped.
inline std::vector<std::string> read_form_lines(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open form file '" + path + "'");
    }
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            continue;
        }
        const auto last = line.find_last_not_of(" \t\r");
        out.push_back(line.substr(first, last - first + 1));
    }
    return out;
}

inline std::vector<std::string> source_texts(const FormSource &src)
{
    if (src.form && src.file) {
        throw InputError("give either --form or --file, not both");
    }
    if (src.form) {
        return {*src.form};
    }
    if (src.file) {
        return read_form_lines(*src.file);
    }
    throw InputError("no input form: use --form or --file");
}

// Skeleton shared by every per-form report; keys are always present in this order.
inline json base_report(const std::string &command, const std::string &input)
{
    json r;
    r["command"] = command;
    r["input"] = input;
    r["parameters"] = json::object();
    r["ranks"] = json::object();
    r["memberships"] = nullptr;
    r["orbit_class"] = nullptr;
    r["conormal_dim"] = nullptr;
    r["expected_codim"] = nullptr;
    r["verdict"] = nullptr;
    r["caveats"] = json::array();
    r["elapsed_ms"] = nullptr;
    return r;
}

inline void add_caveat(json &r, const std::string &c)
{
    for (const auto &x : r["caveats"]) {
        if (x == c) {
            return;
        }
    }
    r["caveats"].push_back(c);
}

inline void set_form_parameters(json &r, const Form &f)
{
    r["input"] = format_form(f);
    r["parameters"]["nvars"] = f.nvars();
    r["parameters"]["d"] = f.degree();
    r["parameters"]["n"] = f.nvars() - 1;
}

inline json ranks_json(const std::map<unsigned, std::size_t> &ranks)
{
    json j = json::object();
    for (const auto &[k, r] : ranks) {
        j[std::to_string(k)] = r;
    }
    return j;
}

inline json all_ranks(const Form &f)
{
    std::map<unsigned, std::size_t> m;
    for (unsigned k = 1; k + 1 <= f.degree(); ++k) {
        m[k] = flattening_rank(f, k);
    }
    return ranks_json(m);
}

inline json memberships_json(const MembershipVerdict &v)
{
    return json{{"sigma1", v.in_sigma1}, {"sigma2", v.in_sigma2}, {"sigma3", v.in_sigma3}, {"D", v.in_D}};
}

inline json error_json(const std::exception &e, int code)
{
    json err;
    err["message"] = e.what();
    err["exit_code"] = code;
    if (const auto *pe = dynamic_cast<const PreconditionError *>(&e)) {
        err["kind"] = to_string(pe->kind());
    } else if (const auto *pa = dynamic_cast<const ParseError *>(&e)) {
        err["kind"] = "parse";
        err["position"] = pa->position();
    } else {
        err["kind"] = "input";
    }
    return err;
}

// Runs `body` on a freshly initialized report, mapping library errors to exit codes.
template <typename Body>
Outcome guarded(const std::string &command, const std::string &input, const GlobalOptions &opts, Body &&body)
{
    Outcome out{base_report(command, input), ok};
    const auto start = std::chrono::steady_clock::now();
    try {
        out.exit_code = body(out.report);
    } catch (const ParseError &e) {
        out.report["error"] = error_json(e, input_error);
        out.exit_code = input_error;
    } catch (const InputError &e) {
        out.report["error"] = error_json(e, input_error);
        out.exit_code = input_error;
    } catch (const PreconditionError &e) {
        out.report["error"] = error_json(e, precondition_error);
        out.exit_code = precondition_error;
    }
    if (opts.timing) {
        out.report["elapsed_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return out;
}

// ----------------------------------------------------------------------------
// Commands on a single form

inline Outcome cmd_flatten(const std::string &text, std::size_t nvars, std::optional<unsigned> k, bool entries,
                           const GlobalOptions &opts)
{
    return guarded("flatten", text, opts, [&](json &r) {
        const Form f = parse_form(text, nvars);
        set_form_parameters(r, f);
        const unsigned kk = k.value_or(f.degree() / 2);
        const auto fm = build_flattening(f, kk);
        const auto rk = rank(fm.matrix);
        r["parameters"]["k"] = kk;
        r["ranks"][std::to_string(kk)] = rk;
        json fl;
        fl["rows"] = fm.matrix.rows();
        fl["cols"] = fm.matrix.cols();
        fl["rank"] = rk;
        if (entries) {
            json rows = json::array();
            for (std::size_t i = 0; i < fm.matrix.rows(); ++i) {
                json row = json::array();
                for (std::size_t j = 0; j < fm.matrix.cols(); ++j) {
                    row.push_back(to_string(fm.matrix(i, j)));
                }
                rows.push_back(std::move(row));
            }
            fl["entries"] = std::move(rows);
        }
        r["flattening"] = std::move(fl);
        return ok;
    });
}

inline Outcome cmd_membership(const std::string &text, std::size_t nvars, const GlobalOptions &opts)
{
    return guarded("membership", text, opts, [&](json &r) {
        const Form f = parse_form(text, nvars);
        set_form_parameters(r, f);
        const auto v = membership(f);
        r["ranks"] = f.is_zero() ? json::object() : all_ranks(f);
        r["memberships"] = memberships_json(v);
        if (!f.is_zero()) {
            r["border_rank_lower_bound"] = border_rank_lower_bound(f);
        }
        if (v.caveat) {
            add_caveat(r, *v.caveat);
        }
        return ok;
    });
}

inline Outcome cmd_classify(const std::string &text, std::size_t nvars, const GlobalOptions &opts)
{
    return guarded("classify", text, opts, [&](json &r) {
        const Form f = parse_form(text, nvars);
        set_form_parameters(r, f);
        r["orbit_class"] = to_string(classify_orbit(f, opts.seed));
        if (f.degree() == 3) {
            add_caveat(r, d3_caveat);
        }
        return ok;
    });
}

inline Outcome cmd_conormal(const std::string &text, std::size_t nvars, bool basis, const GlobalOptions &opts)
{
    return guarded("conormal", text, opts, [&](json &r) {
        const Form f = parse_form(text, nvars);
        set_form_parameters(r, f);
        const auto formula = conormal_formula(f);
        const auto space = conormal_space(f);
        const auto codim = expected_codim(f.degree(), static_cast<unsigned>(f.nvars() - 1));
        r["ranks"] = all_ranks(f);
        r["conormal_dim"] = space.dim();
        r["expected_codim"] = codim;
        r["verdict"] = static_cast<long long>(space.dim()) == codim ? "smooth" : "singular";
        r["conormal_formula"] = to_string(formula);
        if (basis) {
            json b = json::array();
            for (const auto &g : subspace_forms(space)) {
                b.push_back(format_form(g, 'y'));
            }
            r["conormal_basis"] = std::move(b);
        }
        return ok;
    });
}

inline Outcome cmd_analyze(const std::string &text, std::size_t nvars, const GlobalOptions &opts)
{
    return guarded("analyze", text, opts, [&](json &r) {
        const Form f = parse_form(text, nvars);
        set_form_parameters(r, f);
        if (f.degree() < 3 || f.nvars() < 3) {
            throw PreconditionError(Precondition::out_of_range, "analyze needs d >= 3 and n >= 2");
        }
        if (f.is_zero()) {
            throw PreconditionError(Precondition::zero_form, "analyze needs a nonzero form");
        }
        r["ranks"] = all_ranks(f);
        const auto v = membership(f);
        r["memberships"] = memberships_json(v);
        if (v.caveat) {
            add_caveat(r, *v.caveat);
        }
        r["span_dim"] = span_of(f).dim;
        r["border_rank_lower_bound"] = border_rank_lower_bound(f);
        try {
            r["orbit_class"] = to_string(classify_orbit(f, opts.seed));
        } catch (const PreconditionError &e) {
            add_caveat(r, std::string("orbit classification unavailable: ") + e.what());
        }
        const auto rep = smoothness_at(f);
        r["expected_codim"] = rep.expected_codim;
        r["verdict"] = to_string(rep.verdict);
        if (rep.conormal_dim) {
            r["conormal_dim"] = *rep.conormal_dim;
        }
        if (rep.formula_used) {
            r["conormal_formula"] = to_string(*rep.formula_used);
        }
        if (v.in_sigma3) {
            r["in_singular_locus"] = in_singular_locus(f);
        }
        if (rep.caveat) {
            add_caveat(r, *rep.caveat);
        }
        return ok;
    });
}

// ----------------------------------------------------------------------------
// Commands without an input form

inline Outcome cmd_hilbert(const std::string &net, unsigned d, const GlobalOptions &opts)
{
    return guarded("hilbert", net, opts, [&](json &r) {
        NetKind kind;
        if (net == "unmixed") {
            kind = NetKind::unmixed;
        } else if (net == "mixed") {
            kind = NetKind::mixed;
        } else {
            throw InputError("--net must be 'unmixed' or 'mixed'");
        }
        if (d < 2 || d > 12) {
            throw PreconditionError(Precondition::out_of_range, "hilbert needs 2 <= d <= 12");
        }
        r["parameters"]["net"] = net;
        r["parameters"]["d"] = d;
        const auto brute = hilbert_function(squared_generators(apolar_net(kind, d)), d);
        const auto closed = squared_net_hilbert_closed_form(d);
        json h;
        h["generators"] = json::array();
        for (const auto &g : apolar_net(kind, d)) {
            h["generators"].push_back(format_form(g, 'y'));
        }
        h["brute_force"] = brute;
        h["closed_form"] = closed;
        h["agree"] = static_cast<long long>(brute) == closed;
        r["hilbert"] = std::move(h);
        r["verdict"] = static_cast<long long>(brute) == closed ? "agree" : "disagree";
        return static_cast<long long>(brute) == closed ? ok : mismatch;
    });
}

inline Outcome cmd_canonical(const std::string &kind_name, unsigned d, unsigned n, const std::string &alpha,
                             const std::string &beta, const GlobalOptions &opts)
{
    return guarded("canonical", kind_name, opts, [&](json &r) {
        const auto kind = parse_orbit_class(kind_name);
        if (!kind) {
            throw InputError("unknown kind '" + kind_name + "' (fermat, unmixed, mixed, degenerate)");
        }
        auto scalar = [](const std::string &s) {
            // A coefficient is a degree-0 form in the polynomial grammar.
            const Form c = parse_form(s, 1);
            if (c.degree() != 0) {
                throw InputError("coefficient '" + s + "' is not a rational number");
            }
            return c.coefficient(Exponent(std::size_t{1}));
        };
        const Form f = canonical_form(*kind, d, n, scalar(alpha), scalar(beta));
        r["parameters"]["kind"] = to_string(*kind);
        r["parameters"]["d"] = d;
        r["parameters"]["n"] = n;
        if (*kind == OrbitClass::DegenerateBinary) {
            r["parameters"]["alpha"] = alpha;
            r["parameters"]["beta"] = beta;
        }
        r["input"] = kind_name;
        r["form"] = format_form(f);
        r["orbit_class"] = to_string(*kind);
        return ok;
    });
}

// "a..b" or "a" -> [a, b]
inline std::pair<unsigned, unsigned> parse_range(const std::string &s)
{
    const auto dots = s.find("..");
    try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
            const auto v = std::stoul(s, &used);
            if (used != s.size()) {
                throw InputError("bad range '" + s + "'");
            }
            return {static_cast<unsigned>(v), static_cast<unsigned>(v)};
        }
        const std::string lo = s.substr(0, dots), hi = s.substr(dots + 2);
        const auto a = std::stoul(lo, &used);
        if (used != lo.size()) {
            throw InputError("bad range '" + s + "'");
        }
        const auto b = std::stoul(hi, &used);
        if (used != hi.size() || b < a) {
            throw InputError("bad range '" + s + "'");
        }
        return {static_cast<unsigned>(a), static_cast<unsigned>(b)};
    } catch (const std::logic_error &) {
        throw InputError("bad range '" + s + "', expected a..b");
    }
}

inline Outcome cmd_verify_table(const std::string &d_range, const std::string &n_range, const GlobalOptions &opts)
{
    return guarded("verify-table", d_range + " x " + n_range, opts, [&](json &r) {
        const auto [d_lo, d_hi] = parse_range(d_range);
        const auto [n_lo, n_hi] = parse_range(n_range);
        if (!opts.force && (d_lo < 3 || d_hi > 10 || n_lo < 2 || n_hi > 5)) {
            throw PreconditionError(Precondition::out_of_range,
                                    "ranges must lie within d in [3,10] and n in [2,5] (use --force to override)");
        }
        if (d_lo < 3 || n_lo < 2) {
            throw PreconditionError(Precondition::out_of_range, "the table starts at d = 3 and n = 2");
        }
        r["parameters"]["d_range"] = {d_lo, d_hi};
        r["parameters"]["n_range"] = {n_lo, n_hi};
        const auto cells = verify_table(d_lo, d_hi, n_lo, n_hi, opts.jobs);
        json arr = json::array();
        std::size_t mismatches = 0;
        for (const auto &c : cells) {
            json j;
            j["d"] = c.d;
            j["n"] = c.n;
            j["kind"] = to_string(c.kind);
            j["form"] = c.form;
            j["expected_codim"] = c.expected_codim;
            j["conormal_dim"] = c.conormal_dim ? json(*c.conormal_dim) : json(nullptr);
            j["formula"] = c.formula ? json(to_string(*c.formula)) : json(nullptr);
            j["predicted"] = to_string(c.predicted);
            j["computed"] = to_string(c.computed);
            j["match"] = c.matches();
            if (c.error) {
                j["error"] = *c.error;
            }
            mismatches += c.matches() ? 0 : 1;
            arr.push_back(std::move(j));
        }
        r["cells"] = std::move(arr);
        r["mismatches"] = mismatches;
        r["verdict"] = mismatches == 0 ? "all cells match" : "mismatch";
        if (d_lo == 3) {
            add_caveat(r, "d=3 cells are answered from the classification (no conormal formula)");
        }
        return mismatches == 0 ? ok : mismatch;
    });
}

// ----------------------------------------------------------------------------
// Rendering

namespace detail
{

inline std::string scalar_text(const json &v)
{
    if (v.is_null()) {
        return "-";
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    return v.dump();
}

inline bool is_scalar_array(const json &v)
{
    if (!v.is_array()) {
        return false;
    }
    for (const auto &x : v) {
        if (x.is_structured()) {
            return false;
        }
    }
    return true;
}

inline void render(std::ostream &os, const json &v, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    for (const auto &[key, val] : v.items()) {
        // Unset fields are left out of the text form.
        if (val.is_null() || (val.is_structured() && val.empty())) {
            continue;
        }
        if (val.is_object()) {
            os << pad << key << ":\n";
            render(os, val, indent + 1);
        } else if (is_scalar_array(val)) {
            // Entry matrices and long lists read better one item per line.
            os << pad << key << ":\n";
            for (const auto &x : val) {
                os << pad << "  - " << scalar_text(x) << '\n';
            }
        } else if (val.is_array()) {
            os << pad << key << ":\n";
            std::size_t i = 0;
            for (const auto &x : val) {
                if (x.is_object()) {
                    os << pad << "  [" << i++ << "]\n";
                    render(os, x, indent + 2);
                } else {
                    std::string line;
                    for (const auto &y : x) {
                        line += (line.empty() ? "" : "  ") + scalar_text(y);
                    }
                    os << pad << "  " << line << '\n';
                }
            }
        } else {
            os << pad << key << ": " << scalar_text(val) << '\n';
        }
    }
}

} // namespace detail

// Plain-text rendering of a report. It is generated from the JSON document itself, so
// every number shown in text mode is present verbatim in --json output.
inline std::string render_text(const json &report)
{
    std::ostringstream os;
    detail::render(os, report, 0);
    return os.str();
}

} // namespace apolar::cli

#endif
