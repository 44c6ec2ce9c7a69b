#include "report.hpp"

#include "imcf/error.hpp"

namespace imcf::cli {

std::string_view to_string(Branch b) { return b == Branch::Eta1 ? "eta1" : "eta2"; }

Json classification_json(const Classification& c, const Parameters& p) {
  Json j;
  j["type"] = std::string(imcf::to_string(c.profile_type));
  j["x"] = c.x;
  j["y"] = c.y;
  j["left_limit"] = std::string(imcf::to_string(c.left_limit));
  j["right_limit"] = std::string(imcf::to_string(c.right_limit));
  if (c.extremum) {
    j["extremum"] = Json{{"r0", c.extremum->r0},
                         {"value", c.extremum->value},
                         {"branch", std::string(to_string(c.extremum->branch))}};
  }
  if (c.vprime_subtype) j["vprime_subtype"] = std::string(imcf::to_string(*c.vprime_subtype));
  j["vprime_shape"] = vprime_shape(c, p);
  const Table1Row row = table1_row(c);
  j["table1"] = Json{{"image", row.image},
                     {"psi_prime", row.psi_prime},
                     {"left_limit", row.left_limit},
                     {"right_limit", row.right_limit}};
  return j;
}

namespace {

LimitFlag limit_from(const std::string& s) {
  for (LimitFlag f : {LimitFlag::PlusInfinity, LimitFlag::MinusInfinity, LimitFlag::Zero, LimitFlag::Finite}) {
    if (imcf::to_string(f) == s) return f;
  }
  throw Error(ErrorCode::ParseError, "unknown limit '" + s + "'");
}

}  // namespace

Classification classification_from_json(const Json& j) {
  Classification c;
  const std::string type = j.at("type").get<std::string>();
  bool found = false;
  for (ProfileType t : {ProfileType::I, ProfileType::II, ProfileType::III, ProfileType::IV, ProfileType::V}) {
    if (imcf::to_string(t) == type) {
      c.profile_type = t;
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::ParseError, "unknown type '" + type + "'");
  c.x = j.at("x").get<double>();
  c.y = j.at("y").get<double>();
  c.left_limit = limit_from(j.at("left_limit").get<std::string>());
  c.right_limit = limit_from(j.at("right_limit").get<std::string>());
  if (j.contains("extremum")) {
    const Json& e = j.at("extremum");
    c.extremum = Extremum{e.at("r0").get<double>(), e.at("value").get<double>(),
                          e.at("branch").get<std::string>() == "eta1" ? Branch::Eta1 : Branch::Eta2};
  }
  if (j.contains("vprime_subtype")) {
    const std::string s = j.at("vprime_subtype").get<std::string>();
    for (VprimeSubtype v : {VprimeSubtype::Plain, VprimeSubtype::Primed, VprimeSubtype::DoublePrimed}) {
      if (imcf::to_string(v) == s) c.vprime_subtype = v;
    }
  }
  c.psi_nonincreasing = j.at("table1").at("psi_prime").get<std::string>() == "<0";
  return c;
}

}  // namespace imcf::cli
