#include "ramsey/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "ramsey/errors.hpp"
#include "ramsey/finite_field.hpp"
#include "ramsey/projective_plane.hpp"
#include "ramsey/version.hpp"

namespace ramsey {

namespace {

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::uint64_t parse_u64(const std::string& s) {
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(s, &used, 0); // decimal or 0x-prefixed
        if (used != s.size()) throw IoError("trailing junk in integer: " + s);
        return v;
    } catch (const std::logic_error&) {
        throw IoError("not an integer: " + s);
    }
}

} // namespace

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failed: " + path);
    return buf.str();
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

void write_edges(const std::string& path, const BitGraph& g,
                 const std::vector<std::string>& comments) {
    std::string out;
    for (const auto& c : comments) out += "c " + c + "\n";
    out += "p edge " + std::to_string(g.n) + " " + std::to_string(g.edge_count()) + "\n";
    for (std::uint32_t u = 0; u < g.n; ++u)
        for (std::uint32_t v = u + 1; v < g.n; ++v)
            if (g.adjacent(u, v))
                out += "e " + std::to_string(u) + " " + std::to_string(v) + "\n";
    write_text(path, out);
}

void write_edges(const std::string& path, std::uint32_t n,
                 std::span<const std::pair<std::uint32_t, std::uint32_t>> edges) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    std::string buf = "p edge " + std::to_string(n) + " " + std::to_string(edges.size()) + "\n";
    for (const auto& [u, v] : edges) {
        buf += "e " + std::to_string(u) + " " + std::to_string(v) + "\n";
        if (buf.size() > (1u << 20)) {
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

void write_edges(const std::string& path, std::uint32_t n, std::uint64_t m,
                 const std::function<std::span<const std::uint32_t>(std::uint32_t)>& row) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    std::string buf = "p edge " + std::to_string(n) + " " + std::to_string(m) + "\n";
    std::uint64_t written = 0;
    for (std::uint32_t u = 0; u < n; ++u) {
        for (const std::uint32_t v : row(u)) {
            if (v <= u) continue;
            buf += "e " + std::to_string(u) + " " + std::to_string(v) + "\n";
            ++written;
        }
        if (buf.size() > (1u << 20)) {
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + path);
    if (written != m)
        throw IoError("edge generator produced " + std::to_string(written) +
                      " edges, header promised " + std::to_string(m));
}

BitGraph read_edges(const std::string& path, bool strict) {
    std::istringstream in(read_text(path));
    std::string line;
    bool have_header = false;
    std::uint64_t n = 0, m = 0, seen = 0;
    BitGraph g;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        const auto where = [&] { return path + ":" + std::to_string(lineno); };
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream fields(line);
        std::string tag;
        fields >> tag;
        if (tag == "p") {
            std::string kind;
            if (have_header || !(fields >> kind >> n >> m) || kind != "edge")
                throw IoError("bad or repeated problem line at " + where());
            have_header = true;
            g = BitGraph(static_cast<std::uint32_t>(n));
        } else if (tag == "e") {
            std::uint64_t u = 0, v = 0;
            if (!have_header || !(fields >> u >> v))
                throw IoError("bad edge line at " + where());
            if (u >= n || v >= n || u == v)
                throw IoError("edge endpoints out of range at " + where());
            g.add_edge(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
            ++seen;
        } else {
            throw IoError("unrecognized line tag '" + tag + "' at " + where());
        }
    }
    if (!have_header) throw IoError("no problem line in " + path);
    if (strict && (seen != m || g.edge_count() != m))
        throw IoError("edge count mismatch in " + path + ": header says " + std::to_string(m) +
                      ", found " + std::to_string(seen) + " lines, " +
                      std::to_string(g.edge_count()) + " distinct");
    return g;
}

void write_unital(const std::string& path, const Unital& u) {
    std::string out = "U " + std::to_string(u.q) + " " + std::to_string(u.point_ids.size()) +
                      " " + std::to_string(u.secants.size()) + " " +
                      std::to_string(u.tangents.size()) + "\n";
    for (std::size_t i = 0; i < u.point_ids.size(); ++i)
        out += "P " + std::to_string(i) + " " + std::to_string(u.point_ids[i]) + "\n";
    for (std::size_t s = 0; s < u.secants.size(); ++s) {
        out += "S " + std::to_string(s) + " :";
        for (const std::uint32_t pt : u.secant_row(static_cast<std::uint32_t>(s)))
            out += " " + std::to_string(pt);
        out += "\n";
    }
    for (std::size_t t = 0; t < u.tangents.size(); ++t)
        out += "T " + std::to_string(t) + " " + std::to_string(u.tangents[t]) + " " +
               std::to_string(u.tangent_point[t]) + "\n";
    write_text(path, out);
}

void write_cliques(const std::string& path, const SecantGraph& g) {
    const std::uint64_t size = g.q * g.q;
    std::string out = "C " + std::to_string(g.q) + " " + std::to_string(g.n) + " " +
                      std::to_string(g.n_cliques) + " " + std::to_string(size) + "\n";
    for (std::uint32_t c = 0; c < g.n_cliques; ++c) {
        out += "K " + std::to_string(c) + " :";
        for (const std::uint32_t v : g.clique_row(c)) out += " " + std::to_string(v);
        out += "\n";
    }
    write_text(path, out);
}

std::string canonical_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json check_report_to_json(const CheckReport& rep) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : rep.checks) {
        nlohmann::json one;
        one["name"] = c.name;
        one["pass"] = c.pass;
        one["detail"] = c.detail;
        checks.push_back(one);
    }
    nlohmann::json j;
    j["all_pass"] = rep.all_pass();
    j["checks"] = checks;
    return j;
}

void write_json(const std::string& path, const nlohmann::json& j) {
    write_text(path, canonical_json(j));
}

nlohmann::json read_json(const std::string& path) {
    try {
        return nlohmann::json::parse(read_text(path));
    } catch (const nlohmann::json::exception& e) {
        throw IoError("not valid JSON: " + path + " (" + e.what() + ")");
    }
}

nlohmann::json certificate_to_json(const Certificate& c) {
    nlohmann::json j;
    j["tool"] = kToolName;
    j["version"] = c.version;
    j["q"] = c.q;
    j["seed"] = hex64(c.seed);
    j["modulus"] = c.modulus;
    j["p"] = c.p;
    j["n"] = c.n;
    j["edges"] = c.edges;
    j["digest"] = hex64(c.digest);
    j["k4_mode"] = c.k4_mode;
    j["k4_free"] = c.k4_free;
    j["alpha_mode"] = c.alpha_mode;
    j["alpha_lo"] = c.alpha_lo;
    j["alpha_hi"] = c.alpha_hi;
    j["alpha_witness"] = c.alpha_witness;
    j["t"] = c.t;
    j["pass"] = c.pass;
    j["transcript"] = c.transcript;
    j["timestamp"] = c.timestamp;
    return j;
}

Certificate certificate_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object() || !j.contains("tool") || j.at("tool") != kToolName)
            throw IoError(std::string("not a certificate produced by ") + kToolName);
        Certificate c;
        c.version = j.at("version").get<std::string>();
        c.q = j.at("q").get<std::uint32_t>();
        c.seed = parse_u64(j.at("seed").get<std::string>());
        c.modulus = j.at("modulus").get<std::vector<std::uint32_t>>();
        c.p = j.at("p").get<double>();
        c.n = j.at("n").get<std::uint32_t>();
        c.edges = j.at("edges").get<std::uint64_t>();
        c.digest = parse_u64(j.at("digest").get<std::string>());
        c.k4_mode = j.at("k4_mode").get<std::string>();
        c.k4_free = j.at("k4_free").get<bool>();
        c.alpha_mode = j.at("alpha_mode").get<std::string>();
        c.alpha_lo = j.at("alpha_lo").get<std::uint32_t>();
        c.alpha_hi = j.at("alpha_hi").get<std::uint32_t>();
        c.alpha_witness = j.at("alpha_witness").get<std::vector<std::uint32_t>>();
        c.t = j.at("t").get<std::uint32_t>();
        c.pass = j.at("pass").get<bool>();
        c.transcript = j.at("transcript").get<std::vector<std::string>>();
        c.timestamp = j.at("timestamp").get<std::string>();
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed certificate: ") + e.what());
    }
}

void write_certificate(const std::string& path, const Certificate& c) {
    write_json(path, certificate_to_json(c));
}

Certificate read_certificate(const std::string& path) {
    return certificate_from_json(read_json(path));
}

VerifyOutcome verify_certificate(const Certificate& cert, const BitGraph& graph) {
    VerifyOutcome out;
    const auto flag = [&out](const std::string& msg) {
        out.ok = false;
        out.diagnostics.push_back(msg);
    };

    // 1. The exported graph against what the certificate says it hashed.
    if (graph.n != cert.n)
        flag("vertex count mismatch: graph file has " + std::to_string(graph.n) +
             ", certificate records " + std::to_string(cert.n));
    if (graph.edge_count() != cert.edges)
        flag("edge count mismatch: graph file has " + std::to_string(graph.edge_count()) +
             ", certificate records " + std::to_string(cert.edges));
    const std::uint64_t file_digest = edge_digest(graph);
    if (file_digest != cert.digest)
        flag("edge digest mismatch: graph file hashes to " + hex64(file_digest) +
             ", certificate records " + hex64(cert.digest));

    // 2 + 3. Rebuild everything from (q, seed, p) and re-run the checks.
    try {
        const Field F = make_field_q(cert.q);
        if (!cert.modulus.empty() && cert.modulus != F.modulus)
            flag("field modulus mismatch: reconstruction uses a different irreducible");
        const Plane P = make_plane(F);
        const Unital U = build_unital(F, P);
        const SecantGraph G = build_secant_graph(U);
        const K4FreeGraph H = randomize(G, cert.seed);
        const SampledSubgraph s = sample_vertices(H, cert.p, cert.seed);
        if (s.graph.n != cert.n)
            flag("reconstruction vertex count mismatch: got " + std::to_string(s.graph.n) +
                 ", certificate records " + std::to_string(cert.n));
        const std::uint64_t rebuilt = edge_digest(s.graph);
        if (rebuilt != cert.digest)
            flag("reconstruction digest mismatch: (q, seed, p) do not reproduce the "
                 "certified graph");

        const CertifyMode mode =
            cert.k4_mode == "structural" && cert.alpha_mode == "sampled"
                ? CertifyMode::Sampled
                : CertifyMode::Exact;
        CertifyOptions opt;
        opt.field = &F;
        const Certificate redo = certify_witness(H, s, cert.t, mode, opt);
        if (redo.k4_mode != cert.k4_mode)
            flag("k4 mode mismatch: re-run used " + redo.k4_mode + ", certificate records " +
                 cert.k4_mode);
        if (redo.k4_free != cert.k4_free)
            flag(std::string("k4 verdict mismatch: re-run says ") +
                 (redo.k4_free ? "K4-free" : "K4 found"));
        if (redo.alpha_mode != cert.alpha_mode)
            flag("alpha mode mismatch: re-run used " + redo.alpha_mode +
                 ", certificate records " + cert.alpha_mode);
        if (redo.alpha_lo != cert.alpha_lo || redo.alpha_hi != cert.alpha_hi)
            flag("alpha bounds mismatch: re-run found [" + std::to_string(redo.alpha_lo) +
                 "," + std::to_string(redo.alpha_hi) + "], certificate records [" +
                 std::to_string(cert.alpha_lo) + "," + std::to_string(cert.alpha_hi) + "]");
        if (redo.alpha_witness != cert.alpha_witness)
            flag("alpha witness mismatch: re-run found a different independent set");
        if (redo.pass != cert.pass)
            flag(std::string("verdict mismatch: re-run says ") +
                 (redo.pass ? "PASS" : "FAIL") + ", certificate records " +
                 (cert.pass ? "PASS" : "FAIL"));
    } catch (const Error& e) {
        flag(std::string("reconstruction failed: ") + e.what());
    }
    return out;
}

} // namespace ramsey
