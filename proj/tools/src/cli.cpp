#include "mixmoran/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "mixmoran/mixmoran.hpp"

namespace mixmoran::cli {
namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string graph_path;
    std::string family;
    std::string gnp;
    std::string lambda;
    std::string r;
    std::string init = "vertex:0";
    std::uint64_t seed = 0;
    std::string format = "csv";
    std::string out;
    bool strict_cutoff = false;
    std::uint64_t max_steps = 0;
    double epsilon = 0.1;
    std::uint64_t replicates = 1000;
    bool fpras = false;
    std::size_t threads = 1;
    bool rational = false;
    std::size_t max_n = 16;
};

struct LoadedGraph {
    Graph graph;
    std::vector<std::uint64_t> labels;  // printed id of each dense vertex
};

struct InitialSet {
    Configuration cfg;
    std::string label;
};

// ---- output ------------------------------------------------------------------

using Cell = std::variant<std::string, double, std::uint64_t, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_cell(const Cell& c) {
    struct {
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(double d) const { return format_double(d); }
        std::string operator()(std::uint64_t u) const { return std::to_string(u); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
    } visitor;
    return std::visit(visitor, c);
}

void write_table(const Table& t, const std::string& format, std::ostream& os) {
    if (format == "json") {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            nlohmann::ordered_json obj;
            for (std::size_t i = 0; i < t.columns.size(); ++i) {
                const Cell& c = row[i];
                if (const auto* d = std::get_if<double>(&c))
                    obj[t.columns[i]] = std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json(nullptr);
                else if (const auto* u = std::get_if<std::uint64_t>(&c))
                    obj[t.columns[i]] = *u;
                else if (const auto* b = std::get_if<bool>(&c))
                    obj[t.columns[i]] = *b;
                else
                    obj[t.columns[i]] = std::get<std::string>(c);
            }
            rows.push_back(std::move(obj));
        }
        os << rows.dump(2) << '\n';
        return;
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
        os << '\n';
    }
}

// ---- argument parsing ----------------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

Rational parse_number(const std::string& s, const char* what) {
    try {
        return parse_rational(s);
    } catch (const std::invalid_argument&) {
        throw UsageError(std::string("invalid ") + what + " value '" + s + "'");
    }
}

std::uint64_t parse_count(const std::string& s, const char* what) {
    std::uint64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw UsageError(std::string("invalid ") + what + " '" + s + "'");
    return v;
}

// "a,b,c" or "start:stop:step" (inclusive, exact arithmetic).
std::vector<Rational> parse_grid(const std::string& spec, const char* what) {
    if (spec.empty()) throw UsageError(std::string("empty ") + what + " grid");
    std::vector<Rational> out;
    if (spec.find(':') != std::string::npos) {
        const auto parts = split(spec, ':');
        if (parts.size() != 3) throw UsageError(std::string(what) + " range must be start:stop:step");
        const Rational start = parse_number(parts[0], what);
        const Rational stop = parse_number(parts[1], what);
        const Rational step = parse_number(parts[2], what);
        if (step <= 0) throw UsageError(std::string(what) + " range step must be positive");
        if (stop < start) throw UsageError(std::string("empty ") + what + " range");
        for (Rational x = start; x <= stop; x += step) {
            out.push_back(x);
            if (out.size() > 100000) throw UsageError(std::string(what) + " range is too long");
        }
    } else {
        for (const auto& item : split(spec, ',')) out.push_back(parse_number(item, what));
    }
    return out;
}

std::vector<ExactParams> parse_param_grid(const Options& o) {
    const auto lambdas = parse_grid(o.lambda, "lambda");
    const auto rs = parse_grid(o.r, "r");
    std::vector<ExactParams> out;
    for (const auto& l : lambdas)
        for (const auto& r : rs) {
            ExactParams p{l, r};
            try {
                p.validate();
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            out.push_back(p);
        }
    return out;
}

LoadedGraph load_graph(const Options& o) {
    const int sources = !o.graph_path.empty() + !o.family.empty() + !o.gnp.empty();
    if (sources != 1) throw UsageError("exactly one of --graph, --family, --gnp is required");

    auto identity = [](const Graph& g) {
        std::vector<std::uint64_t> ids(g.vertex_count());
        for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
        return ids;
    };

    if (!o.graph_path.empty()) {
        ParsedGraph pg = [&] {
            try {
                return read_edge_list_file(o.graph_path);
            } catch (const GraphError&) {
                throw;
            } catch (const std::runtime_error& e) {
                throw UsageError(e.what());
            }
        }();
        return {std::move(pg.graph), std::move(pg.original_ids)};
    }

    if (!o.family.empty()) {
        const auto colon = o.family.find(':');
        if (colon == std::string::npos) throw UsageError("--family expects NAME:ARG, e.g. cycle:10");
        const std::string name = o.family.substr(0, colon);
        const std::size_t k = parse_count(o.family.substr(colon + 1), "family size");
        std::optional<Graph> g;
        if (name == "cycle") g = cycle_graph(k);
        else if (name == "star") g = star_graph(k);
        else if (name == "complete") g = complete_graph(k);
        else if (name == "path") g = path_graph(k);
        else if (name == "book") g = book_graph(k);
        else throw UsageError("unknown family '" + name + "' (cycle, star, complete, path, book)");
        auto ids = identity(*g);
        return {std::move(*g), std::move(ids)};
    }

    const auto parts = split(o.gnp, ',');
    if (parts.size() != 3) throw UsageError("--gnp expects n,p,seed");
    const std::size_t n = parse_count(parts[0], "gnp n");
    double p = 0.0;
    try {
        std::size_t used = 0;
        p = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw UsageError("invalid gnp probability '" + parts[1] + "'");
    }
    const std::uint64_t seed = parse_count(parts[2], "gnp seed");
    auto g = generate_gnp(n, p, seed);
    if (!g) throw DomainError("G(" + parts[0] + ", " + parts[1] + ") sample with seed " + parts[2] + " is disconnected");
    auto ids = identity(*g);
    return {std::move(*g), std::move(ids)};
}

std::vector<InitialSet> parse_init(const std::string& spec, const LoadedGraph& lg) {
    const std::size_t n = lg.graph.vertex_count();
    std::map<std::uint64_t, Vertex> index;
    for (std::size_t i = 0; i < n; ++i) index[lg.labels[i]] = static_cast<Vertex>(i);

    auto vertex_of = [&](const std::string& s) {
        const std::uint64_t id = parse_count(s, "vertex id");
        auto it = index.find(id);
        if (it == index.end()) throw UsageError("vertex " + s + " is not in the graph");
        return it->second;
    };
    auto label_of = [&](const Configuration& c) {
        std::string out;
        for (Vertex v : c.vertices()) out += (out.empty() ? "" : ";") + std::to_string(lg.labels[v]);
        return out;
    };

    std::vector<InitialSet> sets;
    if (spec == "all-singletons") {
        for (std::size_t i = 0; i < n; ++i) {
            auto c = Configuration::of(n, {static_cast<Vertex>(i)});
            sets.push_back({c, label_of(c)});
        }
        return sets;
    }
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    if (colon == std::string::npos || (kind != "vertex" && kind != "set"))
        throw UsageError("--init expects vertex:K, set:K1,K2,... or all-singletons");
    Configuration c = Configuration::empty(n);
    const auto items = kind == "vertex" ? std::vector<std::string>{spec.substr(colon + 1)} : split(spec.substr(colon + 1), ',');
    for (const auto& item : items) {
        const Vertex v = vertex_of(item);
        if (c.contains(v)) throw UsageError("vertex " + item + " listed twice in --init");
        c.insert(v);
    }
    sets.push_back({c, label_of(c)});
    return sets;
}

// ---- commands ----------------------------------------------------------------

Table cmd_exact(const Options& o) {
    const LoadedGraph lg = load_graph(o);
    const auto grid = parse_param_grid(o);
    const auto sets = parse_init(o.init, lg);
    Table t{{"lambda", "r", "initial_set", "fp", "abs_time"}, {}};
    for (const auto& p : grid) {
        if (o.rational) {
            const auto sol = solve_rational(lg.graph, p, std::min<std::size_t>(o.max_n, 8));
            for (const auto& s : sets)
                t.rows.push_back({p.lambda.get_d(), p.r.get_d(), s.label, to_string(fixation_probability(sol, s.cfg)),
                                  to_string(absorption_time(sol, s.cfg))});
        } else {
            SolveOptions opts;
            opts.max_n = o.max_n;
            const auto sol = solve(lg.graph, to_double(p), opts);
            for (const auto& s : sets)
                t.rows.push_back({p.lambda.get_d(), p.r.get_d(), s.label, fixation_probability(sol, s.cfg),
                                  absorption_time(sol, s.cfg)});
        }
    }
    return t;
}

Table cmd_estimate(const Options& o, bool& aborted) {
    const LoadedGraph lg = load_graph(o);
    const auto lambdas = parse_grid(o.lambda, "lambda");
    const auto rs = parse_grid(o.r, "r");
    parse_param_grid(o);
    const auto sets = parse_init(o.init, lg);
    if (!o.fpras && o.replicates < 1) throw UsageError("--replicates must be >= 1");

    Table t{{"lambda", "r", "initial_set", "replicates", "cutoff", "fixations", "extinctions", "cutoffs", "fp_hat",
             "ci_low", "ci_high", "bracket_low", "bracket_high", "mean_steps", "aborted", "regime"},
            {}};
    for (std::size_t k = 0; k < sets.size(); ++k) {
        const std::uint64_t base = sets.size() == 1 ? o.seed : derive_seed(o.seed, k);
        for (std::size_t i = 0; i < lambdas.size(); ++i)
            for (std::size_t j = 0; j < rs.size(); ++j) {
                const ExactParams p{lambdas[i], rs[j]};
                EstimatorConfig cfg;
                cfg.epsilon = o.epsilon;
                cfg.base_seed = derive_seed(base, i, j);
                cfg.strict_cutoff = o.strict_cutoff;
                cfg.threads = o.threads;
                if (o.fpras) {
                    cfg.mode = AutoBudget{};
                } else {
                    const std::uint64_t cutoff =
                        o.max_steps ? o.max_steps : default_max_steps(lg.graph.vertex_count(), p.r.get_d());
                    cfg.mode = ManualBudget{o.replicates, cutoff};
                }
                const EstimateReport rep = estimate(lg.graph, sets[k].cfg, p, cfg);
                aborted = aborted || rep.aborted;
                t.rows.push_back({p.lambda.get_d(), p.r.get_d(), sets[k].label, rep.replicates, rep.cutoff,
                                  rep.fixations, rep.extinctions, rep.cutoffs, rep.fp_hat, rep.wilson_low,
                                  rep.wilson_high, rep.bracket_low, rep.bracket_high, rep.mean_steps, rep.aborted,
                                  std::string(rep.regime ? to_string(*rep.regime) : "none")});
            }
    }
    return t;
}

bool is_cycle(const Graph& g, const DegreeProfile& prof) {
    return g.vertex_count() >= 3 && prof.regular() && prof.d_min == 2;
}

std::optional<Vertex> star_center(const Graph& g) {
    const std::size_t n = g.vertex_count();
    if (n < 3 || g.edge_count() != n - 1) return std::nullopt;
    for (std::size_t v = 0; v < n; ++v)
        if (g.degree(static_cast<Vertex>(v)) == n - 1) return static_cast<Vertex>(v);
    return std::nullopt;
}

template <typename T>
std::pair<std::string, T> closed_form_value(const Graph& g, const ExactParams& exact, const Configuration& s) {
    const std::size_t n = g.vertex_count();
    const DegreeProfile prof = degree_profile(g);
    if (s.count() == 0) return {"trivial", T(0)};
    if (s.count() == n) return {"trivial", T(1)};

    BasicParams<T> p;
    if constexpr (std::is_same_v<T, double>) p = to_double(exact);
    else p = exact;

    if (exact.r == 1) {
        if (prof.regular()) return {"regular-neutral", neutral_regular_fp<T>(n, s.count())};
        if (prof.bidegreed()) return {"bidegreed-neutral", bidegreed_neutral_fp<T>(g, p.lambda, s)};
        if (exact.lambda == Rational(1, 2)) return {"half-lambda-neutral", neutral_half_lambda_fp<T>(n, s.count())};
        throw DomainError("no closed form: at r = 1 the graph must be regular or bidegreed, or lambda must be 1/2");
    }
    if (is_cycle(g, prof)) {
        if (s.count() != 1) throw DomainError("no closed form: the cycle formula covers a single initial mutant");
        if constexpr (std::is_same_v<T, double>) return {"cycle", cycle_fp(n, p)};
        else return {"cycle", cycle_fp_exact(n, p)};
    }
    if (const auto c = star_center(g)) {
        const StarSolution<T> sol = star_fp<T>(n - 1, p);
        const std::size_t leaves = s.count() - (s.contains(*c) ? 1 : 0);
        return {"star", s.contains(*c) ? sol.mutant_center[leaves] : sol.resident_center[leaves]};
    }
    throw DomainError("no closed form: for r != 1 only cycles and stars are covered");
}

Table cmd_closed_form(const Options& o) {
    const LoadedGraph lg = load_graph(o);
    const auto grid = parse_param_grid(o);
    const auto sets = parse_init(o.init, lg);
    Table t{{"lambda", "r", "initial_set", "method", "fp"}, {}};
    for (const auto& p : grid)
        for (const auto& s : sets) {
            if (o.rational) {
                auto [method, v] = closed_form_value<Rational>(lg.graph, p, s.cfg);
                v.canonicalize();
                t.rows.push_back({p.lambda.get_d(), p.r.get_d(), s.label, method, to_string(v)});
            } else {
                auto [method, v] = closed_form_value<double>(lg.graph, p, s.cfg);
                t.rows.push_back({p.lambda.get_d(), p.r.get_d(), s.label, method, v});
            }
        }
    return t;
}

Table cmd_certify(const Options& o) {
    const LoadedGraph lg = load_graph(o);
    const Graph& g = lg.graph;
    const DegreeProfile prof = degree_profile(g);
    std::string degrees;
    for (std::size_t d : prof.distinct_degrees) degrees += (degrees.empty() ? "" : ";") + std::to_string(d);
    const std::vector<Cell> base{static_cast<std::uint64_t>(g.vertex_count()), static_cast<std::uint64_t>(g.edge_count()),
                                 true, static_cast<std::uint64_t>(prof.d_min), static_cast<std::uint64_t>(prof.d_max),
                                 prof.alpha.to_double(), prof.regular(), prof.bidegreed(), degrees};
    Table t{{"n", "edges", "connected", "d_min", "d_max", "alpha", "regular", "bidegreed", "degrees"}, {}};
    if (o.lambda.empty() && o.r.empty()) {
        t.rows.push_back(base);
        return t;
    }
    if (o.lambda.empty() || o.r.empty()) throw UsageError("certify needs both --lambda and --r, or neither");
    for (const char* c : {"lambda", "r", "initial_set", "regime", "c1", "c2", "c_fp", "c_tau"}) t.columns.push_back(c);
    const auto sets = parse_init(o.init, lg);
    for (const auto& p : parse_param_grid(o))
        for (const auto& s : sets) {
            auto row = base;
            row.insert(row.end(), {p.lambda.get_d(), p.r.get_d(), s.label});
            if (const auto cert = certify_regime(g, s.cfg, p)) {
                row.insert(row.end(), {std::string(to_string(cert->regime)), static_cast<double>(cert->constants.c1),
                                       static_cast<double>(cert->constants.c2), cert->constants.c_fp,
                                       cert->constants.c_tau});
            } else {
                const double nan = std::nan("");
                row.insert(row.end(), {std::string("none"), nan, nan, nan, nan});
            }
            t.rows.push_back(std::move(row));
        }
    return t;
}

void add_graph_options(CLI::App* sub, Options& o) {
    sub->add_option("--graph", o.graph_path, "Edge-list file")->option_text("PATH");
    sub->add_option("--family", o.family, "Named family: cycle:N, star:LEAVES, complete:N, path:N, book:PAGES");
    sub->add_option("--gnp", o.gnp, "Erdos-Renyi sample n,p,seed (must be connected)");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out, "Write output to PATH instead of stdout")->option_text("PATH");
}

void add_param_options(CLI::App* sub, Options& o, bool required) {
    auto* l = sub->add_option("--lambda", o.lambda, "Bd probability: LIST (a,b,...) or RANGE (start:stop:step)");
    auto* r = sub->add_option("--r", o.r, "Mutant fitness: LIST or RANGE");
    if (required) {
        l->required();
        r->required();
    }
    sub->add_option("--init", o.init, "Initial mutants: vertex:K, set:K1,K2,... or all-singletons")
        ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Fixation probabilities and absorption times of the lambda-mixed Bd/dB Moran process", "moran"};
    app.require_subcommand(1);

    auto* exact = app.add_subcommand("exact", "Exact solve over all 2^n configurations");
    add_graph_options(exact, o);
    add_param_options(exact, o, true);
    exact->add_flag("--rational", o.rational, "Exact rational arithmetic (n <= 8)");
    exact->add_option("--max-n", o.max_n, "Refuse graphs with more vertices")->capture_default_str();

    auto* est = app.add_subcommand("estimate", "Monte Carlo estimate of the fixation probability");
    add_graph_options(est, o);
    add_param_options(est, o, true);
    est->add_option("--seed", o.seed, "Base seed")->capture_default_str();
    est->add_option("--replicates", o.replicates, "Number of runs per grid point")->capture_default_str();
    est->add_option("--max-steps", o.max_steps, "Per-run step cutoff (default 100 n^4 max(r~/(r~-1), 1))");
    est->add_flag("--strict-cutoff", o.strict_cutoff, "Abort (exit 4) if any run reaches the cutoff");
    est->add_flag("--fpras", o.fpras, "Use the certified FPRAS budget instead of --replicates/--max-steps");
    est->add_option("--epsilon", o.epsilon, "Relative accuracy for --fpras")->capture_default_str();
    est->add_option("--threads", o.threads, "Worker threads")->capture_default_str();

    auto* cf = app.add_subcommand("closed-form", "Closed-form fixation probability where one applies");
    add_graph_options(cf, o);
    add_param_options(cf, o, true);
    cf->add_flag("--rational", o.rational, "Exact rational arithmetic");

    auto* cert = app.add_subcommand("certify", "Degree profile and certified estimation regime");
    add_graph_options(cert, o);
    add_param_options(cert, o, false);

    auto* graph = app.add_subcommand("graph", "Print the selected graph as a canonical edge list");
    add_graph_options(graph, o);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    std::ofstream file;
    std::ostream* dest = &out;
    if (!o.out.empty()) {
        file.open(o.out);
        if (!file) {
            err << "error: cannot open '" << o.out << "' for writing\n";
            return kUsage;
        }
        dest = &file;
    }

    try {
        bool aborted = false;
        if (graph->parsed()) {
            *dest << serialize_edge_list(load_graph(o).graph);
            return kOk;
        }
        Table t;
        if (exact->parsed()) t = cmd_exact(o);
        else if (est->parsed()) t = cmd_estimate(o, aborted);
        else if (cf->parsed()) t = cmd_closed_form(o);
        else t = cmd_certify(o);
        write_table(t, o.format, *dest);
        if (aborted) {
            err << "error: a run reached the step cutoff under --strict-cutoff\n";
            return kAborted;
        }
        return kOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const GraphError& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == GraphErrorKind::InvalidParam ? kUsage : kDomain;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const TooLarge& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const ClosedFormError& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const InvalidConfig& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const NonConvergence& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace mixmoran::cli
