#include "coorbit/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace coorbit {

nlohmann::json load_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("", "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("", "malformed JSON in " + path.string() + " at byte " + std::to_string(e.byte));
  }
}

namespace {

std::string at(const std::string& ptr, const std::string& key) {
  std::string e;
  for (char c : key) e += c == '~' ? std::string("~0") : c == '/' ? std::string("~1") : std::string(1, c);
  return ptr + "/" + e;
}
std::string at(const std::string& ptr, std::size_t k) { return ptr + "/" + std::to_string(k); }

const nlohmann::json& member(const nlohmann::json& j, const std::string& ptr, const std::string& key) {
  if (!j.contains(key)) throw SchemaError(ptr, "missing required key '" + key + "'");
  return j.at(key);
}

void only_keys(const nlohmann::json& j, const std::string& ptr, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw SchemaError(ptr, "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) throw SchemaError(at(ptr, k), "unknown key");
  }
}

double number(const nlohmann::json& j, const std::string& ptr) {
  if (!j.is_number()) throw SchemaError(ptr, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(ptr, "number is not finite");
  return v;
}

Vec vector(const nlohmann::json& j, const std::string& ptr) {
  if (!j.is_array() || j.empty() || j.size() > static_cast<std::size_t>(kMaxDim)) {
    throw SchemaError(ptr, "expected an array of 1 to 4 numbers");
  }
  Vec v(static_cast<int>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<int>(k)) = number(j[k], at(ptr, k));
  return v;
}

Mat matrix(const nlohmann::json& j, const std::string& ptr) {
  if (!j.is_array() || j.empty() || j.size() > static_cast<std::size_t>(kMaxDim)) {
    throw SchemaError(ptr, "expected a square matrix given as 1 to 4 rows");
  }
  const auto n = static_cast<int>(j.size());
  Mat m(n, n);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const auto& row = j[r];
    if (!row.is_array() || row.size() != j.size()) throw SchemaError(at(ptr, r), "row length differs from the row count");
    for (std::size_t c = 0; c < row.size(); ++c) m(static_cast<int>(r), static_cast<int>(c)) = number(row[c], at(at(ptr, r), c));
  }
  return m;
}

std::vector<Mat> matrices(const nlohmann::json& j, const std::string& ptr) {
  if (!j.is_array() || j.empty()) throw SchemaError(ptr, "expected a non-empty array of matrices");
  std::vector<Mat> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(matrix(j[k], at(ptr, k)));
    if (out.back().rows() != out.front().rows()) throw SchemaError(at(ptr, k), "matrix size differs from the first");
  }
  return out;
}

SupportOracle parse_support(const nlohmann::json& j, const std::string& ptr, int dim) {
  only_keys(j, ptr, {"kind", "normal", "transform"});
  SupportOracle s;
  const auto& k = member(j, ptr, "kind");
  const std::string kind = k.is_string() ? k.get<std::string>() : "";
  if (kind == "Punctured") {
    s.kind = SupportOracle::Kind::Punctured;
  } else if (kind == "HalfSpace") {
    s.kind = SupportOracle::Kind::HalfSpace;
    s.normal = vector(member(j, ptr, "normal"), at(ptr, "normal"));
    if (s.normal.size() != dim) throw SchemaError(at(ptr, "normal"), "normal has the wrong dimension");
    if (s.normal.norm() == 0.0) throw SchemaError(at(ptr, "normal"), "normal must be nonzero");
  } else if (kind == "NonzeroCoordinates") {
    s.kind = SupportOracle::Kind::NonzeroCoordinates;
  } else {
    throw SchemaError(at(ptr, "kind"), "expected Punctured, HalfSpace or NonzeroCoordinates");
  }
  if (j.contains("transform")) {
    s.transform = matrix(j["transform"], at(ptr, "transform"));
    if (s.transform.rows() != dim) throw SchemaError(at(ptr, "transform"), "transform has the wrong dimension");
  }
  return s;
}

}  // namespace

GroupSpec parse_group(const nlohmann::json& j, const std::string& ptr) {
  only_keys(j, ptr, {"kind", "dim", "generator", "matrix", "generators", "frame", "support"});
  const auto& k = member(j, ptr, "kind");
  if (!k.is_string()) throw SchemaError(at(ptr, "kind"), "expected a string");
  GroupKind kind;
  try {
    kind = group_kind_from_string(k.get<std::string>());
  } catch (const ConfigurationError& e) {
    throw SchemaError(at(ptr, "kind"), e.what());
  }
  int dim = 0;
  if (j.contains("dim")) {
    if (!j["dim"].is_number_integer()) throw SchemaError(at(ptr, "dim"), "expected an integer");
    dim = j["dim"].get<int>();
    if (dim < 1 || dim > kMaxDim) throw SchemaError(at(ptr, "dim"), "dimension must be in [1, 4]");
  }
  GroupSpec spec;
  try {
    switch (kind) {
      case GroupKind::OneParameter:
        spec = GroupSpec::one_parameter(matrix(member(j, ptr, "generator"), at(ptr, "generator")));
        break;
      case GroupKind::Cyclic:
        spec = GroupSpec::cyclic(matrix(member(j, ptr, "matrix"), at(ptr, "matrix")));
        break;
      case GroupKind::AbelianFlow:
        spec = GroupSpec::abelian_flow(matrices(member(j, ptr, "generators"), at(ptr, "generators")));
        break;
      case GroupKind::DiscreteFG:
        spec = GroupSpec::discrete(matrices(member(j, ptr, "generators"), at(ptr, "generators")));
        break;
      case GroupKind::ScalarSimilitude:
        if (!dim) throw SchemaError(ptr, "missing required key 'dim'");
        spec = GroupSpec::scalar_similitude(dim);
        break;
      case GroupKind::Similitude:
        if (!dim) throw SchemaError(ptr, "missing required key 'dim'");
        spec = GroupSpec::similitude(dim);
        break;
    }
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(ptr, e.what());
  }
  if (dim && dim != spec.dim) throw SchemaError(at(ptr, "dim"), "dim does not match the matrix size");
  if (j.contains("frame")) {
    spec.frame = matrix(j["frame"], at(ptr, "frame"));
    if (spec.frame.rows() != spec.dim) throw SchemaError(at(ptr, "frame"), "frame has the wrong dimension");
    if (std::abs(spec.frame.determinant()) == 0.0) throw SchemaError(at(ptr, "frame"), "frame is singular");
  }
  if (j.contains("support")) spec.support = parse_support(j["support"], at(ptr, "support"), spec.dim);
  return spec;
}

std::pair<GroupSpec, GroupSpec> parse_pair(const nlohmann::json& j) {
  only_keys(j, "", {"a", "b"});
  auto a = parse_group(member(j, "", "a"), "/a");
  auto b = parse_group(member(j, "", "b"), "/b");
  if (a.dim != b.dim) throw SchemaError("/b", "groups act on different dimensions");
  return {a, b};
}

std::vector<Packet> parse_battery(const nlohmann::json& j, int dim) {
  only_keys(j, "", {"functions"});
  const auto& fs = member(j, "", "functions");
  if (!fs.is_array() || fs.empty()) throw SchemaError("/functions", "expected a non-empty array");
  std::vector<Packet> out;
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const std::string p = at("/functions", k);
    only_keys(fs[k], p, {"center", "widths", "width", "modulation", "scale"});
    Packet pk;
    pk.center = vector(member(fs[k], p, "center"), at(p, "center"));
    if (pk.center.size() != dim) throw SchemaError(at(p, "center"), "center has the wrong dimension");
    if (fs[k].contains("widths")) {
      pk.widths = vector(fs[k]["widths"], at(p, "widths"));
      if (pk.widths.size() != dim) throw SchemaError(at(p, "widths"), "widths have the wrong dimension");
    } else {
      pk.widths = Vec::Constant(dim, number(member(fs[k], p, "width"), at(p, "width")));
    }
    if ((pk.widths.array() <= 0.0).any()) throw SchemaError(p, "widths must be positive");
    pk.modulation = Vec::Zero(dim);
    if (fs[k].contains("modulation")) {
      pk.modulation = vector(fs[k]["modulation"], at(p, "modulation"));
      if (pk.modulation.size() != dim) throw SchemaError(at(p, "modulation"), "modulation has the wrong dimension");
    }
    pk.scale = static_cast<int>(k) + 1;
    if (fs[k].contains("scale")) {
      if (!fs[k]["scale"].is_number_integer()) throw SchemaError(at(p, "scale"), "expected an integer");
      pk.scale = fs[k]["scale"].get<int>();
    }
    out.push_back(pk);
  }
  return out;
}

nlohmann::json group_to_json(const GroupSpec& spec) {
  nlohmann::json j{{"kind", to_string(spec.kind)}, {"dim", spec.dim}};
  switch (spec.kind) {
    case GroupKind::OneParameter:
      j["generator"] = to_rows(spec.generators[0]);
      break;
    case GroupKind::Cyclic:
      j["matrix"] = to_rows(spec.generators[0]);
      break;
    case GroupKind::AbelianFlow:
    case GroupKind::DiscreteFG: {
      nlohmann::json g = nlohmann::json::array();
      for (const auto& m : spec.generators) g.push_back(to_rows(m));
      j["generators"] = g;
      break;
    }
    case GroupKind::ScalarSimilitude:
    case GroupKind::Similitude:
      break;
  }
  if (spec.frame.size()) j["frame"] = to_rows(spec.frame);
  if (!spec.support.is_default()) {
    const auto& s = spec.support;
    nlohmann::json o;
    o["kind"] = s.kind == SupportOracle::Kind::Punctured ? "Punctured"
                : s.kind == SupportOracle::Kind::HalfSpace ? "HalfSpace"
                                                          : "NonzeroCoordinates";
    if (s.kind == SupportOracle::Kind::HalfSpace) o["normal"] = to_vector(s.normal);
    if (s.transform.size()) o["transform"] = to_rows(s.transform);
    j["support"] = o;
  }
  return j;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigurationError("cannot write " + path.string());
  out << text;
}

}  // namespace coorbit
