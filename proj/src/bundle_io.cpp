#include "curvafield/bundle_io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>

namespace curvafield {

using nlohmann::json;

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::IoError, "sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int k = 0; k < len; ++k) {
    out.push_back(hex[md[k] >> 4]);
    out.push_back(hex[md[k] & 0xf]);
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path + "'");
}

namespace {

json vec_json(const Vec2& v) { return json::array({v.x, v.y}); }

Vec2 json_vec(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::ParseError, "expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

CellKind parse_cell_kind(const std::string& s) {
  for (auto k : {CellKind::Unassigned, CellKind::Constant, CellKind::PointToGoal, CellKind::PointToExitMidpoint}) {
    if (s == to_string(k)) return k;
  }
  throw Error(ErrorCode::ParseError, "unknown cell kind '" + s + "'");
}

FaceKind parse_face_kind(const std::string& s) {
  for (auto k : {FaceKind::Unassigned, FaceKind::Fixed, FaceKind::PointToGoal}) {
    if (s == to_string(k)) return k;
  }
  throw Error(ErrorCode::ParseError, "unknown face kind '" + s + "'");
}

FaceRole parse_face_role(const std::string& s) {
  for (auto r : {FaceRole::ExitShared, FaceRole::BoundaryInward, FaceRole::SiblingInward, FaceRole::FunnelInternal}) {
    if (s == to_string(r)) return r;
  }
  throw Error(ErrorCode::ParseError, "unknown face role '" + s + "'");
}

json assignment_to_json(const FieldAssignment& a) {
  json cells = json::array();
  for (const auto& cv : a.cells) {
    json e{{"kind", to_string(cv.kind)}};
    if (cv.kind == CellKind::Constant) e["value"] = vec_json(cv.value);
    cells.push_back(std::move(e));
  }
  json faces = json::array();
  for (const auto& tri : a.faces) {
    json row = json::array();
    for (const auto& fv : tri) {
      json e{{"kind", to_string(fv.kind)}, {"role", to_string(fv.role)}};
      if (fv.kind == FaceKind::Fixed) e["value"] = vec_json(fv.value);
      row.push_back(std::move(e));
    }
    faces.push_back(std::move(row));
  }
  return {{"method", to_string(a.method)}, {"cells", std::move(cells)}, {"faces", std::move(faces)}};
}

json content_of(const PlanBundle& b) {
  json doc;
  doc["format"] = "curvafield-bundle";
  doc["version"] = 1;
  doc["method"] = to_string(b.assignment.method);
  doc["complex"] = complex_to_json(*b.complex);
  doc["plan"] = plan_to_json(*b.plan);
  doc["assignment"] = assignment_to_json(b.assignment);
  if (b.funnel) {
    doc["funnel"] = {{"mode", to_string(b.funnel->mode)}, {"members", b.funnel->members}};
  }
  return doc;
}

template <class T>
std::vector<T> sized_vector(const json& j, std::size_t n, const char* what) {
  auto v = j.get<std::vector<T>>();
  if (v.size() != n) throw Error(ErrorCode::ParseError, std::string(what) + " has the wrong length");
  return v;
}

}  // namespace

json complex_to_json(const SimplicialComplex& c) {
  json verts = json::array();
  for (const auto& p : c.vertices) verts.push_back(vec_json(p));
  return {{"vertices", std::move(verts)}, {"triangles", c.triangles}};
}

json plan_to_json(const DiscretePlan& plan) {
  return {{"goal", vec_json(plan.goal)},     {"goal_simplex", plan.goal_simplex},
          {"successor", plan.successor},     {"hop", plan.hop},
          {"exit_face", plan.exit_face},     {"opposite_vertex", plan.opposite_vertex}};
}

std::string plan_digest(const SimplicialComplex& c, const DiscretePlan& plan) {
  const json j{{"complex", complex_to_json(c)}, {"plan", plan_to_json(plan)}};
  return sha256_hex(j.dump());
}

json bundle_to_json(const PlanBundle& b) {
  json doc = content_of(b);
  doc["plan_digest"] = plan_digest(*b.complex, *b.plan);
  doc["digest"] = sha256_hex(content_of(b).dump());
  return doc;
}

std::string write_bundle(const PlanBundle& b) { return bundle_to_json(b).dump(1) + "\n"; }

void write_bundle_file(const PlanBundle& b, const std::string& path) { write_text_file(path, write_bundle(b)); }

PlanBundle read_bundle(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bundle is not valid JSON: ") + e.what());
  }
  try {
    if (doc.value("format", "") != "curvafield-bundle") throw Error(ErrorCode::ParseError, "not a bundle document");
    const std::string digest = doc.at("digest").get<std::string>();
    json content = doc;
    content.erase("digest");
    content.erase("plan_digest");
    if (sha256_hex(content.dump()) != digest) throw Error(ErrorCode::ParseError, "bundle digest mismatch");

    std::vector<Point> verts;
    for (const auto& v : doc.at("complex").at("vertices")) verts.push_back(json_vec(v));
    auto tris = doc.at("complex").at("triangles").get<std::vector<std::array<int, 3>>>();
    for (const auto& t : tris) {
      for (int v : t) {
        if (v < 0 || v >= static_cast<int>(verts.size())) throw Error(ErrorCode::ParseError, "vertex index out of range");
      }
    }
    auto complex = std::make_shared<SimplicialComplex>(build_complex(std::move(verts), std::move(tris), true));
    const std::size_t n = complex->triangles.size();

    const json& jp = doc.at("plan");
    auto plan = std::make_shared<DiscretePlan>();
    plan->goal = json_vec(jp.at("goal"));
    plan->goal_simplex = jp.at("goal_simplex").get<int>();
    plan->successor = sized_vector<int>(jp.at("successor"), n, "successor");
    plan->hop = sized_vector<int>(jp.at("hop"), n, "hop");
    plan->exit_face = sized_vector<int>(jp.at("exit_face"), n, "exit_face");
    plan->opposite_vertex = sized_vector<int>(jp.at("opposite_vertex"), n, "opposite_vertex");
    if (plan->goal_simplex < 0 || plan->goal_simplex >= static_cast<int>(n)) {
      throw Error(ErrorCode::ParseError, "goal simplex out of range");
    }

    const json& ja = doc.at("assignment");
    FieldAssignment a;
    a.method = parse_method(ja.at("method").get<std::string>());
    a.complex = complex;
    a.plan = plan;
    if (ja.at("cells").size() != n || ja.at("faces").size() != n) {
      throw Error(ErrorCode::ParseError, "assignment size does not match the complex");
    }
    for (const auto& e : ja.at("cells")) {
      CellVector cv;
      cv.kind = parse_cell_kind(e.at("kind").get<std::string>());
      if (cv.kind == CellKind::Constant) cv.value = UnitVec::adopt(json_vec(e.at("value")));
      a.cells.push_back(cv);
    }
    for (const auto& row : ja.at("faces")) {
      if (row.size() != 3) throw Error(ErrorCode::ParseError, "face row must have three entries");
      std::array<FaceVector, 3> tri{};
      for (int k = 0; k < 3; ++k) {
        const json& e = row[static_cast<std::size_t>(k)];
        tri[k].kind = parse_face_kind(e.at("kind").get<std::string>());
        tri[k].role = parse_face_role(e.at("role").get<std::string>());
        if (tri[k].kind == FaceKind::Fixed) tri[k].value = UnitVec::adopt(json_vec(e.at("value")));
      }
      a.faces.push_back(tri);
    }

    std::optional<FunnelRegion> funnel;
    if (doc.contains("funnel")) {
      const json& jf = doc.at("funnel");
      auto members = jf.at("members").get<std::vector<int>>();
      for (int m : members) {
        if (m < 0 || m >= static_cast<int>(n)) throw Error(ErrorCode::ParseError, "funnel member out of range");
      }
      funnel = make_funnel_region(*complex, std::move(members), parse_funnel_mode(jf.at("mode").get<std::string>()));
    }
    return make_bundle(complex, plan, std::move(a), std::move(funnel));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed bundle: ") + e.what());
  }
}

PlanBundle read_bundle_file(const std::string& path) { return read_bundle(read_text_file(path)); }

}  // namespace curvafield
