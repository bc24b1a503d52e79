#include "emiqp/instance_io.hpp"

#include <fstream>
#include <sstream>

namespace emiqp {

bool InstanceFile::feasible(const RVector& x) const {
    if (x.size() != dim()) return false;
    if (auto* e = std::get_if<Ellipsoid>(&region)) return e->contains(x) && mixed_integral(x, p);
    if (auto* l = std::get_if<MixedLattice>(&region)) return norm2(x) <= 1 && l->contains(x);
    return std::get<Polytope>(region).contains(x) && mixed_integral(x, p);
}

bool InstanceFile::operator==(const InstanceFile& o) const {
    if (version != o.version || p != o.p || meta != o.meta) return false;
    if (!(objective.H == o.objective.H) || objective.h != o.objective.h || objective.gamma != o.objective.gamma)
        return false;
    if (region.index() != o.region.index()) return false;
    if (auto* e = std::get_if<Ellipsoid>(&region)) {
        const auto& f = std::get<Ellipsoid>(o.region);
        return e->c == f.c && e->Q == f.Q;
    }
    if (auto* l = std::get_if<MixedLattice>(&region)) {
        const auto& m = std::get<MixedLattice>(o.region);
        return l->B == m.B && l->c == m.c && l->p == m.p;
    }
    const auto& a = std::get<Polytope>(region);
    const auto& b = std::get<Polytope>(o.region);
    return a.W == b.W && a.w == b.w;
}

namespace {

void put_row(std::ostringstream& os, const std::string& key, const RVector& v) {
    os << key;
    for (const auto& x : v) os << ' ' << to_string(x);
    os << '\n';
}

void put_lower(std::ostringstream& os, const std::string& key, const RMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << key;
        for (std::size_t j = 0; j <= i; ++j) os << ' ' << to_string(m(i, j));
        os << '\n';
    }
}

void put_full(std::ostringstream& os, const std::string& key, const RMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) put_row(os, key, m.row(i));
}

std::vector<std::string> split(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

RVector rationals(const std::vector<std::string>& toks, std::size_t from) {
    RVector v;
    for (std::size_t i = from; i < toks.size(); ++i) v.push_back(parse_rational(toks[i]));
    return v;
}

RMatrix symmetric_from_lower(const std::vector<RVector>& rows, std::size_t n, const char* what) {
    if (rows.size() != n) throw InvalidArgument(std::string("instance: wrong number of rows for ") + what);
    RMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != i + 1) throw InvalidArgument(std::string("instance: malformed lower triangle of ") + what);
        for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = rows[i][j];
    }
    return m;
}

RMatrix full_from_rows(const std::vector<RVector>& rows, std::size_t m, std::size_t n, const char* what) {
    if (rows.size() != m) throw InvalidArgument(std::string("instance: wrong number of rows for ") + what);
    for (const auto& r : rows)
        if (r.size() != n) throw InvalidArgument(std::string("instance: malformed row of ") + what);
    return RMatrix::from_rows(rows, n);
}

}  // namespace

std::string serialize(const InstanceFile& inst) {
    std::ostringstream os;
    const std::size_t n = inst.dim();
    os << "miqp-instance v" << inst.version << '\n';
    os << "n " << n << '\n';
    os << "p " << inst.p << '\n';
    put_lower(os, "H", inst.objective.H);
    put_row(os, "h", inst.objective.h);
    os << "gamma " << to_string(inst.objective.gamma) << '\n';
    if (auto* e = std::get_if<Ellipsoid>(&inst.region)) {
        os << "region ellipsoid\n";
        put_row(os, "c", e->c);
        put_lower(os, "Q", e->Q);
    } else if (auto* l = std::get_if<MixedLattice>(&inst.region)) {
        os << "region mitrLattice\n";
        put_full(os, "B", l->B);
        put_row(os, "c", l->c);
    } else {
        const auto& P = std::get<Polytope>(inst.region);
        os << "region polytope\n";
        os << "m " << P.W.rows() << '\n';
        put_full(os, "W", P.W);
        put_row(os, "w", P.w);
    }
    for (const auto& [k, v] : inst.meta) os << "meta " << k << ' ' << v << '\n';
    os << "end\n";
    return os.str();
}

InstanceFile parse_instance(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string line;
    std::vector<std::vector<std::string>> lines;
    while (std::getline(is, line)) {
        auto toks = split(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        lines.push_back(std::move(toks));
    }
    if (lines.empty() || lines[0].size() != 2 || lines[0][0] != "miqp-instance")
        throw InvalidArgument("instance: missing header");
    if (lines[0][1] != "v1") throw InvalidArgument("instance: unsupported version " + lines[0][1]);

    InstanceFile inst;
    long n = -1, p = -1, m = -1;
    std::vector<RVector> H, Q, B, W;
    RVector h, c, w;
    bool haveH = false, haveGamma = false, ended = false;
    std::string region;
    Rational gamma = 0;
    auto count = [](const std::vector<std::string>& t) {
        if (t.size() != 2) throw InvalidArgument("instance: malformed " + t[0] + " line");
        std::size_t pos = 0;
        long v = std::stol(t[1], &pos);
        if (pos != t[1].size() || v < 0) throw InvalidArgument("instance: malformed " + t[0] + " line");
        return v;
    };
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& t = lines[i];
        const std::string& key = t[0];
        if (ended) throw InvalidArgument("instance: content after end");
        if (key == "n") n = count(t);
        else if (key == "p") p = count(t);
        else if (key == "m") m = count(t);
        else if (key == "H") { H.push_back(rationals(t, 1)); haveH = true; }
        else if (key == "h") h = rationals(t, 1);
        else if (key == "gamma") {
            if (t.size() != 2) throw InvalidArgument("instance: malformed gamma line");
            gamma = parse_rational(t[1]);
            haveGamma = true;
        } else if (key == "region") {
            if (t.size() != 2) throw InvalidArgument("instance: malformed region line");
            region = t[1];
        } else if (key == "c") c = rationals(t, 1);
        else if (key == "Q") Q.push_back(rationals(t, 1));
        else if (key == "B") B.push_back(rationals(t, 1));
        else if (key == "W") W.push_back(rationals(t, 1));
        else if (key == "w") w = rationals(t, 1);
        else if (key == "meta") {
            if (t.size() < 3) throw InvalidArgument("instance: malformed meta line");
            std::string v = t[2];
            for (std::size_t j = 3; j < t.size(); ++j) v += " " + t[j];
            inst.meta[t[1]] = v;
        } else if (key == "end") ended = true;
        else throw InvalidArgument("instance: unknown key " + key);
    }
    if (!ended) throw InvalidArgument("instance: missing end");
    if (n < 0 || p < 0) throw InvalidArgument("instance: missing n or p");
    if (p > n) throw InvalidArgument("instance: p exceeds n");
    const auto nn = static_cast<std::size_t>(n);
    inst.p = static_cast<std::size_t>(p);
    RMatrix Hm = haveH || nn > 0 ? symmetric_from_lower(H, nn, "H") : RMatrix();
    if (h.size() != nn) throw InvalidArgument("instance: h has wrong length");
    if (!haveGamma) throw InvalidArgument("instance: missing gamma");
    inst.objective = QuadraticObjective(Hm, h, gamma);
    if (region == "ellipsoid") {
        if (c.size() != nn) throw InvalidArgument("instance: c has wrong length");
        try {
            inst.region = Ellipsoid(c, symmetric_from_lower(Q, nn, "Q"));
        } catch (const NotPositiveDefinite&) {
            throw InvalidArgument("instance: Q is not positive definite");
        }
    } else if (region == "mitrLattice") {
        if (c.size() != nn) throw InvalidArgument("instance: c has wrong length");
        inst.region = MixedLattice(full_from_rows(B, nn, nn, "B"), c, inst.p);
    } else if (region == "polytope") {
        if (m < 0) throw InvalidArgument("instance: missing m");
        if (w.size() != static_cast<std::size_t>(m)) throw InvalidArgument("instance: w has wrong length");
        inst.region = Polytope{full_from_rows(W, static_cast<std::size_t>(m), nn, "W"), w};
    } else {
        throw InvalidArgument("instance: unknown or missing region");
    }
    return inst;
}

InstanceFile load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return parse_instance(os.str());
}

void save_instance(const std::filesystem::path& path, const InstanceFile& inst) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + path.string());
    out << serialize(inst);
}

InstanceFile make_file(const EmiqpInstance& inst) {
    InstanceFile f;
    f.p = inst.p;
    f.objective = inst.objective;
    f.region = inst.ellipsoid;
    return f;
}

InstanceFile make_file(const MiqpInstance& inst) {
    InstanceFile f;
    f.p = inst.p;
    f.objective = inst.objective;
    f.region = inst.polytope;
    return f;
}

InstanceFile make_file(const MitrInstance& inst) {
    InstanceFile f;
    f.p = inst.lattice.p;
    f.objective = inst.objective;
    f.region = inst.lattice;
    return f;
}

RVector parse_point(std::string_view text) {
    std::string s(text);
    for (char& ch : s)
        if (ch == ',' || ch == '(' || ch == ')' || ch == '[' || ch == ']') ch = ' ';
    std::istringstream is(s);
    RVector v;
    std::string tok;
    while (is >> tok) v.push_back(parse_rational(tok));
    return v;
}

}  // namespace emiqp
