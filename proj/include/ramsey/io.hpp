#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ramsey/pipeline.hpp"
#include "ramsey/secant_graph.hpp"
#include "ramsey/small_graph.hpp"
#include "ramsey/unital.hpp"

namespace ramsey {

// Every format here is canonical: a file written from the same object is
// byte-identical on every platform (LF line ends, fixed orderings, no
// locale-dependent rendering), so file digests and round-trips are stable.

// ---- Plain text files ---------------------------------------------------- //

// Whole-file read/write in binary mode. Throws IoError when the file cannot
// be opened (reads and writes) or fully written.
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& content);

// ---- Edge lists (.edges) ------------------------------------------------- //

// DIMACS-flavored:
//   c <comment>          (optional, skipped on read)
//   p edge <n> <m>
//   e <u> <v>            (0-based, u < v, ascending lexicographic)
// Round-trip note: files written without comments re-export byte-identically.
void write_edges(const std::string& path, const BitGraph& g,
                 const std::vector<std::string>& comments = {});

// Same format from an already-sorted (u < v, ascending) pair list -- the
// writer for graphs too large to mirror into a BitGraph.
void write_edges(const std::string& path, std::uint32_t n,
                 std::span<const std::pair<std::uint32_t, std::uint32_t>> edges);

// Streaming variant over sorted CSR-style neighbor rows; emits each pair
// once (v > u). m must equal the true edge count.
void write_edges(const std::string& path, std::uint32_t n, std::uint64_t m,
                 const std::function<std::span<const std::uint32_t>(std::uint32_t)>& row);

// strict (default): the header's edge count must match the distinct edges
// read. Lenient reading is for re-verification, where an internally
// inconsistent file should surface as a digest/count mismatch against the
// certificate rather than as a parse error.
BitGraph read_edges(const std::string& path, bool strict = true);

// ---- Geometry dumps ------------------------------------------------------ //

// unital.txt:
//   U <q> <points> <secants> <tangents>
//   P <i> <plane point id>                    one line per unital point
//   S <i> : <q+1 unital point indices>        one line per secant
//   T <i> <plane line id> <tangency point>    one line per tangent
void write_unital(const std::string& path, const Unital& u);

// cliques.txt:
//   C <q> <vertices> <cliques> <clique size>
//   K <i> : <q^2 vertex ids>
void write_cliques(const std::string& path, const SecantGraph& g);

// ---- Canonical JSON ------------------------------------------------------ //

// Sorted keys (nlohmann's default object is key-ordered), two-space indent,
// LF line ends, trailing newline.
std::string canonical_json(const nlohmann::json& j);
void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

// A check report as a JSON array of {detail, name, pass} objects plus the
// aggregate, for embedding into report files.
nlohmann::json check_report_to_json(const CheckReport& rep);

// Certificates serialize with 64-bit seed and digest as hex strings (JSON
// numbers are lossy past 2^53); all other fields are plain JSON values.
nlohmann::json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j); // throws IoError
void write_certificate(const std::string& path, const Certificate& c);
Certificate read_certificate(const std::string& path);

// ---- Re-verification ----------------------------------------------------- //

struct VerifyOutcome {
    bool ok = true;
    std::vector<std::string> diagnostics; // one line per mismatch, in check order
};

// Re-verifies a certificate against an exported graph:
//   1. the graph file must match the certificate's n, edge count, and edge
//      digest (a tampered file is named here);
//   2. the graph is rebuilt from scratch out of (q, seed, p) and must
//      reproduce the same digest;
//   3. the certification itself is re-run (with default options, which is
//      what produced it) and every recorded verdict field must agree.
// The timestamp is informational and never compared.
VerifyOutcome verify_certificate(const Certificate& cert, const BitGraph& graph);

} // namespace ramsey
