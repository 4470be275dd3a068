#include "nkc/json_io.hpp"

#include <fstream>
#include <sstream>

namespace nkc {

json quiver_to_json(const BoundQuiver& q) {
    json j;
    j["vertices"] = q.vertices();
    json arrows = json::array();
    for (const Arrow& a : q.arrows()) arrows.push_back({{"id", a.id}, {"src", a.src}, {"tgt", a.tgt}});
    j["arrows"] = arrows;
    json rels = json::array();
    for (const auto& [a, b] : q.relations()) rels.push_back({a, b});
    j["relations"] = rels;
    return j;
}

namespace {
[[noreturn]] void fail(const std::string& msg) { throw QuiverError(ErrorKind::Parse, msg); }

std::string as_id(const json& v, const char* what) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    fail(std::string("expected a string id for ") + what);
}
}  // namespace

BoundQuiver quiver_from_json(const json& j) {
    if (!j.is_object()) fail("quiver document must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "vertices" && it.key() != "arrows" && it.key() != "relations")
            fail("unknown field '" + it.key() + "'");
    if (!j.contains("vertices") || !j["vertices"].is_array()) fail("missing 'vertices' array");
    std::vector<std::string> verts;
    for (const auto& v : j["vertices"]) verts.push_back(as_id(v, "vertex"));
    std::vector<Arrow> arrows;
    if (j.contains("arrows")) {
        if (!j["arrows"].is_array()) fail("'arrows' must be an array");
        for (const auto& a : j["arrows"]) {
            if (!a.is_object() || !a.contains("id") || !a.contains("src") || !a.contains("tgt"))
                fail("each arrow needs id, src and tgt");
            for (auto it = a.begin(); it != a.end(); ++it)
                if (it.key() != "id" && it.key() != "src" && it.key() != "tgt")
                    fail("unknown arrow field '" + it.key() + "'");
            arrows.push_back({as_id(a["id"], "arrow"), as_id(a["src"], "src"), as_id(a["tgt"], "tgt")});
        }
    }
    std::set<std::pair<std::string, std::string>> rels;
    if (j.contains("relations")) {
        if (!j["relations"].is_array()) fail("'relations' must be an array");
        for (const auto& r : j["relations"]) {
            if (!r.is_array() || r.size() != 2) fail("each relation is a pair of arrow ids");
            rels.insert({as_id(r[0], "relation"), as_id(r[1], "relation")});
        }
    }
    return BoundQuiver(std::move(verts), std::move(arrows), std::move(rels));
}

BoundQuiver quiver_from_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    return quiver_from_json(j);
}

BoundQuiver read_quiver_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return quiver_from_text(ss.str());
}

}  // namespace nkc
