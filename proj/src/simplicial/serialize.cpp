#include "fissile/simplicial/serialize.hpp"

namespace fissile {

nlohmann::json set_to_json(const SimplicialSet& s) {
  nlohmann::json j;
  j["bound"] = s.bound();
  j["basepoint"] = s.based() ? nlohmann::json(s.basepoint()) : nlohmann::json(nullptr);
  j["counts"] = s.counts();
  j["faces"] = s.face_table();
  j["degeneracies"] = s.degeneracy_table();
  return j;
}

SetPtr set_from_json(const nlohmann::json& j) {
  std::optional<int> basepoint;
  if (!j.at("basepoint").is_null()) basepoint = j.at("basepoint").get<int>();
  return make_set(j.at("bound").get<int>(), j.at("counts").get<std::vector<int>>(),
                  j.at("faces").get<std::vector<std::vector<int>>>(),
                  j.at("degeneracies").get<std::vector<std::vector<int>>>(), basepoint);
}

}  // namespace fissile
