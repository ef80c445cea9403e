#include "polyapprox/io.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>

#include "polyapprox/errors.hpp"

namespace pa {

namespace {

std::vector<Vec> json_points(const Json& j) {
    std::vector<Vec> pts;
    for (const auto& row : j) pts.push_back(row.get<Vec>());
    return pts;
}

} // namespace

VPolytope read_polytope(const Json& j) {
    if (!j.contains("dim")) throw ConfigError("polytope json: missing dim");
    int dim = j.at("dim").get<int>();
    if (j.contains("vertices")) return convex_hull(json_points(j.at("vertices")), dim);
    if (j.contains("halfspaces")) {
        HPolytope h;
        h.dim = dim;
        for (const auto& hs : j.at("halfspaces")) {
            Vec nrm = hs.at("normal").get<Vec>();
            double nn = norm2(nrm);
            if (std::fabs(nn - 1.0) > 1e-12) throw ConfigError("halfspace normal must be unit");
            h.halfspaces.push_back({nrm, hs.at("offset").get<double>()});
        }
        return to_vpolytope(h);
    }
    throw ConfigError("polytope json: need vertices or halfspaces");
}

Json write_polytope(const VPolytope& p, bool with_halfspaces) {
    Json j;
    j["dim"] = p.dim;
    Json verts = Json::array();
    for (const auto& v : p.vertices) verts.push_back(v);
    j["vertices"] = verts;
    if (with_halfspaces) {
        Json hs = Json::array();
        for (const auto& f : merged_facets(p)) {
            Json h;
            h["normal"] = f.normal;
            h["offset"] = f.offset;
            hs.push_back(h);
        }
        j["halfspaces"] = hs;
    }
    return j;
}

Json write_hpolytope(const HPolytope& h) {
    Json j;
    j["dim"] = h.dim;
    Json hs = Json::array();
    for (const auto& half : h.halfspaces) {
        Json one;
        one["normal"] = half.normal;
        one["offset"] = half.offset;
        hs.push_back(one);
    }
    j["halfspaces"] = hs;
    return j;
}

BodyPtr read_body(const Json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "ball") {
        Vec c = j.at("center").get<Vec>();
        return std::make_shared<Ball>(c, j.at("radius").get<double>());
    }
    if (kind == "ellipsoid") {
        Vec c = j.at("center").get<Vec>();
        Vec a = j.at("semiaxes").get<Vec>();
        Mat rot;
        if (j.contains("orientation"))
            for (const auto& row : j.at("orientation")) rot.push_back(row.get<Vec>());
        return std::make_shared<Ellipsoid>(c, a, rot);
    }
    if (kind == "cube") {
        int n = j.at("dim").get<int>();
        bool sym = j.value("symmetric", false);
        return std::make_shared<Cube>(n, sym);
    }
    if (kind == "simplex") {
        if (j.contains("vertices")) return std::make_shared<Simplex>(json_points(j.at("vertices")));
        int n = j.at("dim").get<int>();
        return std::make_shared<Simplex>(Simplex::standard(n));
    }
    if (kind == "polytope") {
        return std::make_shared<PolytopeBody>(read_polytope(j));
    }
    if (kind == "smooth2d") {
        double c0 = j.at("c0").get<double>();
        Vec ca = j.value("cos", Vec{});
        Vec cb = j.value("sin", Vec{});
        return std::make_shared<SmoothPlanarBody>(c0, ca, cb);
    }
    throw ConfigError("body json: unknown kind " + kind);
}

Json write_body(const ConvexBody& b) {
    Json j;
    j["kind"] = b.kind();
    if (const auto* ball = dynamic_cast<const Ball*>(&b)) {
        j["center"] = ball->center();
        j["radius"] = ball->radius();
    } else if (const auto* e = dynamic_cast<const Ellipsoid*>(&b)) {
        j["center"] = e->center();
        j["semiaxes"] = e->semiaxes();
        j["orientation"] = e->orientation();
    } else if (const auto* s = dynamic_cast<const SmoothPlanarBody*>(&b)) {
        j["c0"] = s->c0();
        j["cos"] = s->cos_coeff();
        j["sin"] = s->sin_coeff();
    } else if (const auto* p = dynamic_cast<const PolytopeBody*>(&b)) {
        j.update(write_polytope(p->polytope(), false));
        if (b.kind() == "cube" || b.kind() == "simplex") j["kind"] = b.kind();
    }
    return j;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << j.dump(2) << "\n";
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) text_ += ',';
        text_ += header[i];
    }
    text_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_) throw ConfigError("csv row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) text_ += ',';
        text_ += format_double(values[i]);
    }
    text_ += '\n';
}

void CsvWriter::footer(const std::string& line) {
    text_ += "# " + line + '\n';
}

void CsvWriter::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path);
    out << text_;
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

void write_manifest(const std::string& path, const RunManifest& m) {
    Json j;
    j["config_hash"] = m.config_hash;
    j["seed"] = m.seed;
    j["version"] = m.version;
    j["started"] = m.started;
    j["finished"] = m.finished;
    j["outputs"] = m.outputs;
    write_json_file(path, j);
}

} // namespace pa
