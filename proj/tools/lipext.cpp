// lipext: solve, query, generate and verify Lipschitz extensions on graphs.
//
// Exit codes: 0 ok, 1 input error, 2 not converged, 3 verification failure.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lipext/io.hpp"
#include "lipext/lipext.hpp"

namespace {

using namespace lipext;
using io::json;

enum Exit { kOk = 0, kInputError = 1, kNotConverged = 2, kVerificationFailed = 3 };

int log_level() {
    const char* env = std::getenv("LIPEXT_LOG");
    return env ? std::atoi(env) : 0;
}

template <class... Args>
void log(int level, const Args&... args) {
    if (log_level() < level) return;
    std::cerr << "lipext:";
    ((std::cerr << ' ' << args), ...);
    std::cerr << '\n';
}

void emit(const std::optional<std::string>& path, const json& j) {
    const auto text = io::dump(j);
    if (path) {
        io::write_text_file(*path, text);
        log(1, "wrote", *path);
    } else {
        std::cout << text;
    }
}

Graph load_graph(const std::string& path) { return Graph::build(io::parse_graph(io::read_json_file(path))); }

struct SolveArgs {
    std::string input;
    std::optional<std::string> output;
    std::optional<std::string> method;
    double tol = kDefaultIterateTol;
    std::size_t max_iter = kDefaultMaxSweeps;
};

int cmd_solve(const SolveArgs& a) {
    const auto g = load_graph(a.input);
    const std::string method = a.method.value_or(g.value_dim() == 1 ? "path" : "iterate");
    log(1, "solve:", g.vertex_count(), "vertices,", g.edge_count(), "edges, m =", g.value_dim(), ", method", method);

    ExtensionResult r;
    if (method == "path") {
        if (g.value_dim() != 1)
            throw Error(ErrorCode::MethodUnavailable, "method path needs scalar boundary values (m = 1)");
        r = solve_scalar(g);
        log(1, "solve:", r.stage_slopes->size(), "connecting paths labeled");
    } else if (g.value_dim() == 1) {
        r = gauss_seidel_scalar(g, a.tol, a.max_iter);
    } else {
        r = iterate_tight(g, a.tol, a.max_iter);
    }
    if (r.iteration) {
        log(1, "solve:", r.iteration->sweeps, "sweeps, final residual", r.iteration->final_residual);
        if (log_level() >= 2)
            for (std::size_t k = 0; k < r.iteration->residual_history.size(); ++k)
                log(2, "sweep", k + 1, "displacement", r.iteration->residual_history[k]);
    }

    const auto check = verify_extension(g, r.values);
    io::ResultReport report;
    report.residual = r.residual;
    if (check.max_principle) report.max_principle = check.max_principle->pass;
    report.geodesic_lip_ratio = check.geodesic.value;
    report.stage_slopes = r.stage_slopes;
    report.converged = r.converged;
    emit(a.output, io::result_to_json(g, r.values, report));
    if (!r.converged) {
        std::cerr << "lipext: NotConverged: stopped after " << r.iteration->sweeps << " sweeps with residual "
                  << r.residual << '\n';
        return kNotConverged;
    }
    return kOk;
}

struct KPointArgs {
    std::string input;
    std::string query;
    std::optional<std::string> output;
    double tol = kCertificateTol;
    bool check = false;
};

int cmd_kpoint(const KPointArgs& a) {
    const auto samples = io::parse_point_set(io::read_json_file(a.input));
    const auto x = io::parse_coordinates(a.query);
    const auto r = samples.value_dim() == 1 ? kpoint_scalar(samples, x) : kpoint_vector(samples, x, a.tol);
    log(1, "kpoint:", samples.size(), "samples, lambda", r.lambda);
    auto out = io::kpoint_to_json(r);
    if (a.check) {
        const auto oracle = kpoint_oracle(samples, x, a.tol);
        out["oracle_gap"] = std::abs(oracle.lambda - r.lambda);
        out["oracle_point_gap"] = distance(oracle.point, r.point);
    }
    emit(a.output, out);
    return kOk;
}

struct GenArgs {
    std::string kind;
    std::size_t nx = 0, ny = 0, n = 0, extra_edges = 0;
    std::optional<std::uint64_t> seed;
    std::string boundary = "linear-x";
    std::optional<std::string> output;
};

int cmd_gen(const GenArgs& a) {
    const auto f = BoundaryFunction::parse(a.boundary);
    GraphData g;
    if (a.kind == "grid") {
        g = make_grid(a.nx, a.ny, f);
    } else if (a.kind == "path") {
        g = make_path(a.n, f);
    } else if (a.kind == "star") {
        g = make_star(a.n, f);
    } else {
        if (!a.seed) throw Error(ErrorCode::BadParams, "random graphs need --seed");
        g = make_random(a.n, *a.seed, a.extra_edges, f);
    }
    const auto report = validate(g);
    if (!report.ok()) throw Error(ErrorCode::BadParams, report.summary());
    log(1, "gen:", a.kind, g.vertices.size(), "vertices,", g.edges.size(), "edges");
    emit(a.output, io::graph_to_json(g));
    return kOk;
}

struct VerifyArgs {
    std::string input;
    std::string result;
    std::optional<std::string> output;
    double tol = kCertificateTol;
};

int cmd_verify(const VerifyArgs& a) {
    const auto g = load_graph(a.input);
    const auto u = io::parse_result_values(io::read_json_file(a.result), g);
    const auto report = verify_extension(g, u, a.tol);
    log(1, "verify: residual", report.residual.value, "bound", report.residual.bound);
    emit(a.output, io::verification_to_json(report));
    return report.pass() ? kOk : kVerificationFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lipschitz extensions on graphs"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* s = app.add_subcommand("solve", "extend boundary data to every vertex");
    s->add_option("--input", solve.input, "graph file")->required();
    s->add_option("--output", solve.output, "result file (default: stdout)");
    s->add_option("--method", solve.method, "path (m = 1) or iterate; default path for m = 1")
        ->check(CLI::IsMember({"path", "iterate"}));
    s->add_option("--tol", solve.tol, "iteration tolerance")->check(CLI::PositiveNumber);
    s->add_option("--max-iter", solve.max_iter, "sweep limit for iterate")->check(CLI::PositiveNumber);

    KPointArgs kp;
    auto* k = app.add_subcommand("kpoint", "Kirszbraun value of a labeled point set at a query point");
    k->add_option("--input", kp.input, "point set file")->required();
    k->add_option("--query", kp.query, "comma-separated coordinates")->required();
    k->add_option("--output", kp.output, "output file (default: stdout)");
    k->add_option("--tol", kp.tol, "certificate tolerance")->check(CLI::PositiveNumber);
    k->add_flag("--check", kp.check, "compare against the bisection oracle");

    GenArgs gen;
    auto* gn = app.add_subcommand("gen", "generate a graph file");
    gn->add_option("kind", gen.kind, "grid | path | star | random")
        ->required()
        ->check(CLI::IsMember({"grid", "path", "star", "random"}));
    gn->add_option("--nx", gen.nx, "grid columns");
    gn->add_option("--ny", gen.ny, "grid rows");
    gn->add_option("--n", gen.n, "vertices (path, random) or leaves (star)");
    gn->add_option("--extra-edges", gen.extra_edges, "edges beyond the spanning tree (random)");
    gn->add_option("--seed", gen.seed, "random seed");
    gn->add_option("--boundary", gen.boundary, "linear-x | linear-y | constant:<v> | corners");
    gn->add_option("--output", gen.output, "graph file (default: stdout)");

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify", "check a result file against a graph");
    v->add_option("--input", ver.input, "graph file")->required();
    v->add_option("--result", ver.result, "result file")->required();
    v->add_option("--output", ver.output, "report file (default: stdout)");
    v->add_option("--tol", ver.tol, "relative tolerance")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (s->parsed()) return cmd_solve(solve);
        if (k->parsed()) return cmd_kpoint(kp);
        if (gn->parsed()) return cmd_gen(gen);
        return cmd_verify(ver);
    } catch (const Error& e) {
        std::cerr << "lipext: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "lipext: " << e.what() << '\n';
        return kInputError;
    }
}
