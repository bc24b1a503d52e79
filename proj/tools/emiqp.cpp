#include "emiqp/generators.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

using namespace emiqp;

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitFail = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInvalid = 3;

std::string interval_string(const Interval& iv) {
    return "[" + to_string(iv.lo) + ", " + to_string(iv.hi) + "]";
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << text;
}

RVector read_point(const std::string& arg) {
    std::ifstream in(arg);
    if (in) {
        std::ostringstream os;
        os << in.rdbuf();
        return parse_point(os.str());
    }
    return parse_point(arg);
}

// "0-1,1-2:3" -> edges (0,1) weight 1 and (1,2) weight 3
Graph parse_graph(std::size_t vertices, const std::string& spec) {
    Graph g;
    g.vertices = vertices;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        long weight = 1;
        auto colon = item.find(':');
        if (colon != std::string::npos) {
            weight = std::stol(item.substr(colon + 1));
            item = item.substr(0, colon);
        }
        auto dash = item.find('-');
        if (dash == std::string::npos) throw InvalidArgument("edge needs the form u-v: " + item);
        g.edges.push_back({std::stoul(item.substr(0, dash)), std::stoul(item.substr(dash + 1)), weight});
    }
    g.validate();
    return g;
}

// "1,0;0,2" -> vectors (1,0) and (0,2)
std::vector<RVector> parse_vectors(const std::string& spec) {
    std::vector<RVector> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (!item.empty()) out.push_back(parse_point(item));
    return out;
}

struct SolveArgs {
    std::string file;
    std::string eps;
    long psi = 62;
};

int run_solve(const SolveArgs& a) {
    InstanceFile inst = load_instance(a.file);
    Rational eps = 1;
    if (!inst.is_polytope()) {
        if (a.eps.empty()) throw InvalidArgument("--eps is required for this instance");
        eps = parse_rational(a.eps);
    }
    auto t0 = std::chrono::steady_clock::now();
    SolveOutcome out = solve_file(inst, eps, a.psi);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (out.status == SolveStatus::Infeasible) {
        std::cout << "status infeasible\n";
    } else {
        std::cout << "status solved\n";
        std::cout << "x " << to_string(out.x) << '\n';
        std::cout << "value " << to_string(out.value) << '\n';
        std::cout << "eps " << to_string(out.eps) << '\n';
    }
    const SolveStats& st = out.stats;
    std::cout << "depth " << st.depth << '\n';
    std::cout << "nodes " << st.nodes << '\n';
    std::cout << "flat_calls " << st.flatCalls << '\n';
    std::cout << "tr_calls " << st.trCalls << '\n';
    std::cout << "hyperplanes";
    for (auto c : st.hyperplanesPerLevel) std::cout << ' ' << c;
    std::cout << '\n';
    std::cout << "seconds " << std::fixed << std::setprecision(3) << secs << '\n';
    return out.status == SolveStatus::Infeasible ? kExitInfeasible : kExitSolved;
}

int run_oracle(const std::string& file, long bits) {
    InstanceFile inst = load_instance(file);
    OracleBounds b = oracle_file(inst, bits);
    if (!b.feasible) {
        std::cout << "feasible no\nfibers " << b.fibers << '\n';
        return kExitSolved;
    }
    std::cout << "feasible yes\n";
    std::cout << "f_inf " << interval_string(b.fInf) << '\n';
    std::cout << "f_sup " << interval_string(b.fSup) << '\n';
    std::cout << "argmin " << to_string(b.witnessMin) << '\n';
    std::cout << "argmax " << to_string(b.witnessMax) << '\n';
    std::cout << "fibers " << b.fibers << '\n';
    return kExitSolved;
}

int run_verify(const std::string& file, const std::string& point, const std::string& epsText, long bits,
               const std::string& slackText) {
    InstanceFile inst = load_instance(file);
    RVector x = read_point(point);
    Rational eps = parse_rational(epsText);
    Rational slack = parse_rational(slackText);
    if (x.size() != inst.dim()) throw InvalidArgument("point has the wrong dimension");
    OracleBounds b = oracle_file(inst, bits);
    VerifyReport r = verify_approx(inst.objective, inst.feasible(x), x, eps, b, slack);
    std::cout << (r.pass ? "pass" : "fail") << '\n';
    std::cout << "feasible " << (r.feasible ? "yes" : "no") << '\n';
    if (r.feasible) {
        std::cout << "value " << to_string(r.value) << '\n';
        std::cout << "margin " << to_string(r.margin) << " (~" << to_double(r.margin) << ")\n";
    }
    if (!r.reason.empty()) std::cout << "reason " << r.reason << '\n';
    return r.pass ? kExitSolved : kExitFail;
}

struct BenchRow {
    std::string name;
    std::string status;
    std::string value;
    std::string gap;
    double seconds = 0;
};

BenchRow bench_one(const std::filesystem::path& path, const Rational& eps, long bits) {
    BenchRow row;
    row.name = path.filename().string();
    try {
        InstanceFile inst = load_instance(path);
        auto t0 = std::chrono::steady_clock::now();
        SolveOutcome out = solve_file(inst, eps, 62);
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        OracleBounds b = oracle_file(inst, bits);
        if (out.status == SolveStatus::Infeasible) {
            row.status = b.feasible ? "MISMATCH" : "infeasible";
            row.value = "-";
            row.gap = "-";
            return row;
        }
        row.status = b.feasible ? "solved" : "MISMATCH";
        std::ostringstream vs;
        vs << std::setprecision(10) << to_double(out.value);
        row.value = vs.str();
        Rational spread = b.fSup.lo - b.fInf.hi;
        if (spread > 0) {
            std::ostringstream os;
            os << std::setprecision(4) << to_double((out.value - b.fInf.lo) / spread);
            row.gap = os.str();
        } else {
            row.gap = "0";
        }
    } catch (const std::exception& e) {
        row.status = std::string("error: ") + e.what();
        row.value = "-";
        row.gap = "-";
    }
    return row;
}

int run_bench(const std::string& dir, const std::string& epsText, long bits) {
    Rational eps = parse_rational(epsText);
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".miqp") files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    unsigned threads = 1;
    if (const char* env = std::getenv("MIQP_BENCH_THREADS")) threads = std::max(1, std::atoi(env));
    threads = std::min<unsigned>(threads, std::max<std::size_t>(files.size(), 1));

    std::vector<BenchRow> rows(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++) rows[i] = bench_one(files[i], eps, bits);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::cout << std::left << std::setw(28) << "instance" << std::setw(12) << "status" << std::setw(24) << "value"
              << std::setw(12) << "gap" << "seconds\n";
    bool ok = true;
    for (const auto& r : rows) {
        std::cout << std::left << std::setw(28) << r.name << std::setw(12) << r.status << std::setw(24) << r.value
                  << std::setw(12) << r.gap << std::fixed << std::setprecision(3) << r.seconds << '\n';
        if (r.status != "solved" && r.status != "infeasible") ok = false;
    }
    return ok ? kExitSolved : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximation algorithms for mixed integer quadratic programs"};
    app.require_subcommand(1);

    SolveArgs solveArgs;
    auto* solve = app.add_subcommand("solve", "Approximately minimize an instance");
    solve->add_option("file", solveArgs.file, "Instance file")->required();
    solve->add_option("--eps", solveArgs.eps, "Approximation ratio as a rational, e.g. 1/10");
    solve->add_option("--psi", solveArgs.psi, "Box bound exponent for polytope instances");

    std::string oracleFile;
    long oracleBits = 40;
    auto* oracle = app.add_subcommand("oracle", "Bracket the extreme values by exhaustive enumeration");
    oracle->add_option("file", oracleFile, "Instance file")->required();
    oracle->add_option("--bits", oracleBits, "Bracket precision in bits");

    std::string verifyFile, verifyPoint, verifyEps, verifySlack = "0";
    long verifyBits = 40;
    auto* verify = app.add_subcommand("verify", "Check that a point is an eps-approximate solution");
    verify->add_option("file", verifyFile, "Instance file")->required();
    verify->add_option("--point", verifyPoint, "Point file or inline list such as 1,1/2,-3")->required();
    verify->add_option("--eps", verifyEps, "Approximation ratio as a rational")->required();
    verify->add_option("--bits", verifyBits, "Oracle precision in bits");
    verify->add_option("--slack", verifySlack, "Additive tolerance as a rational");

    auto* gen = app.add_subcommand("gen", "Write a generated instance");
    gen->require_subcommand(1);
    std::string genOut;
    std::size_t mcVertices = 0;
    std::string mcEdges;
    auto* genMaxcut = gen->add_subcommand("maxcut", "Max-Cut as a lattice trust region instance");
    genMaxcut->add_option("--vertices", mcVertices, "Vertex count")->required();
    genMaxcut->add_option("--edges", mcEdges, "Edges such as 0-1,1-2:3 (weight after colon)");
    genMaxcut->add_option("-o,--output", genOut, "Output file (default stdout)");
    std::string cvpBasis, cvpTarget, cvpRadius;
    auto* genCvp = gen->add_subcommand("cvp", "Closest vector decision as a feasibility instance");
    genCvp->add_option("--basis", cvpBasis, "Basis vectors such as 1,0;0,2")->required();
    genCvp->add_option("--target", cvpTarget, "Target vector")->required();
    genCvp->add_option("--radius", cvpRadius, "Radius as a rational")->required();
    genCvp->add_option("-o,--output", genOut, "Output file (default stdout)");
    RandomSpec rs;
    std::string kind = "emiqp";
    auto* genRandom = gen->add_subcommand("random", "Seeded random instance");
    genRandom->add_option("--kind", kind, "emiqp or miqp")->check(CLI::IsMember({"emiqp", "miqp"}));
    genRandom->add_option("--seed", rs.seed, "Seed");
    genRandom->add_option("--n", rs.n, "Dimension");
    genRandom->add_option("--p", rs.p, "Number of integer variables");
    genRandom->add_option("--range", rs.range, "Coefficient range");
    genRandom->add_option("-o,--output", genOut, "Output file (default stdout)");

    std::string benchDir, benchEps;
    long benchBits = 40;
    auto* bench = app.add_subcommand("bench", "Solve and check every .miqp file in a directory");
    bench->add_option("dir", benchDir, "Directory")->required();
    bench->add_option("--eps", benchEps, "Approximation ratio as a rational")->required();
    bench->add_option("--bits", benchBits, "Oracle precision in bits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*solve) return run_solve(solveArgs);
        if (*oracle) return run_oracle(oracleFile, oracleBits);
        if (*verify) return run_verify(verifyFile, verifyPoint, verifyEps, verifyBits, verifySlack);
        if (*bench) return run_bench(benchDir, benchEps, benchBits);
        if (*genMaxcut) {
            Graph g = parse_graph(mcVertices, mcEdges);
            MaxCutInstance mc = gen_maxcut(g);
            InstanceFile f = make_file(mc.mitr);
            f.meta["generator"] = "maxcut";
            f.meta["offset"] = to_string(mc.offset);
            if (g.vertices <= 20) f.meta["max_cut"] = std::to_string(brute_force_max_cut(g));
            write_output(genOut, serialize(f));
        } else if (*genCvp) {
            CvpInstance cv = gen_cvp(parse_vectors(cvpBasis), parse_point(cvpTarget), parse_rational(cvpRadius));
            InstanceFile f = make_file(cv.mitr);
            f.meta["generator"] = "cvp";
            write_output(genOut, serialize(f));
        } else if (*genRandom) {
            InstanceFile f = kind == "emiqp" ? make_file(gen_random_emiqp(rs)) : make_file(gen_random_miqp(rs));
            f.meta["generator"] = "random-" + kind;
            f.meta["seed"] = std::to_string(rs.seed);
            write_output(genOut, serialize(f));
        }
        return kExitSolved;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const NotPositiveDefinite& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}
