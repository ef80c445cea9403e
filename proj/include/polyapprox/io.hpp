#pragma once

#include <string>

#include "json.hpp"

#include "polyapprox/bodies.hpp"
#include "polyapprox/experiments.hpp"

namespace pa {

using Json = nlohmann::json;

// Polytope files: {"dim": n, "vertices": [[...],...]} or
// {"dim": n, "halfspaces": [{"normal": [...], "offset": t}, ...]}.
VPolytope read_polytope(const Json& j);
Json write_polytope(const VPolytope& p, bool with_halfspaces = true);

Json write_hpolytope(const HPolytope& h);

// Body specs: {"kind": "ball"|"ellipsoid"|"cube"|"simplex"|"polytope"|"smooth2d", ...}.
BodyPtr read_body(const Json& j);
Json write_body(const ConvexBody& b);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

// full double precision (17 significant digits)
std::string format_double(double v);

// One row per line, '.' decimal, '\n' endings, header first; footers are
// '#'-prefixed lines appended after the data.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void row(const std::vector<double>& values);
    void footer(const std::string& line);
    const std::string& text() const { return text_; }
    void save(const std::string& path) const;

private:
    std::string text_;
    std::size_t columns_ = 0;
};

std::uint64_t fnv1a64(const std::string& s);

struct RunManifest {
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string version;
    std::string started;
    std::string finished;
    std::vector<std::string> outputs;
};

void write_manifest(const std::string& path, const RunManifest& m);

} // namespace pa
