#pragma once

#include "trielliptic/census.hpp"
#include "trielliptic/geometry.hpp"
#include "trielliptic/git.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tri {

// Keys keep insertion order, so equal inputs dump to equal bytes.
using Json = nlohmann::ordered_json;
constexpr int kSchemaVersion = 1;

std::string rat_str(const Rat& r);
Rat parse_rat(const std::string& s);
Json to_json(const IntMatrix& m);
Json to_json(const FiniteQuadraticForm& f);
Json to_json(const MonomialFamily& f);
Json to_json(const Classification& c);
Json to_json(const PicardSelection& p);
Json to_json(const InvariantTuple& t);
Json to_json(const EmbeddingSearch& s);
Json to_json(const IsotropicNormalForm& f);
Json to_json(const OrbitCheck& c);
Json to_json(const FamilyVerification& v);
// {n, typeII: [{e, rootSystem, thetaCoeffs, discForm, ...}], typeIII, runtimeSec, searchBounds, ...}
Json census_report(const BoundaryCensus& c, bool timing = true);
// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

// ---------------------------------------------------------------- catalogs

// {name, gram, glue}: the lattice spanned by the Gram basis and the glue vectors.
struct CatalogEntry {
    std::string name;
    IntMatrix gram;
    std::vector<RatVec> glue;

    IntegralLattice lattice() const;
};
std::vector<CatalogEntry> parse_lattice_catalog(const Json& j);
std::vector<CatalogEntry> load_lattice_catalog(const std::string& path);
// Niemeier lattices as root Gram plus glue vectors, and L8.
std::vector<CatalogEntry> builtin_lattice_catalog();
Json to_json(const CatalogEntry& e);

// Form file entry: either a Gram matrix or generator orders with q-values
// (and optionally b-values, upper triangle by rows).
struct FormEntry {
    std::string name;
    std::optional<IntMatrix> gram;
    std::vector<long> orders;
    std::vector<Rat> q, b;

    FiniteQuadraticForm form() const;
};
std::vector<FormEntry> parse_form_catalog(const Json& j);
std::vector<FormEntry> load_form_catalog(const std::string& path);
std::vector<FormEntry> builtin_form_catalog();
Json to_json(const FormEntry& e);

// Directory holding niemeier.json and forms.json: TRIELLIPTIC_CATALOG if set,
// else the data directory of the source tree.
std::string catalog_dir();
// FNV-1a 64 of the file contents in hex, "missing" if unreadable.
std::string file_checksum(const std::string& path);

struct RunManifest {
    std::vector<std::string> command;
    std::uint64_t seed = 7;
    SearchOptions bounds;
    int jobs = 1;
    bool timing = true;  // false drops wall-clock fields

    Json to_json() const;
};

// ---------------------------------------------------------------- acceptance

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    double seconds = 0;
    std::string summary;
    Json evidence;
};

struct AcceptanceOptions {
    SearchOptions search;
    int jobs = 1;
    std::uint64_t seed = 7;
    int samples = 50;
};

constexpr int kCriteria = 7;
CriterionResult run_criterion(int id, const AcceptanceOptions& opts = {});
// "PASS 3 picard ranks (3,4,3): ..." / "FAIL ..."
std::string result_line(const CriterionResult& r);
Json to_json(const CriterionResult& r, bool timing = true);

}  // namespace tri
