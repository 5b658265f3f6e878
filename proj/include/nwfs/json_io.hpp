#pragma once

#include <string>

#include <json.hpp>

#include "nwfs/arrows.hpp"
#include "nwfs/base.hpp"

namespace nwfs {

using json = nlohmann::json;

// Encodings are stable: objects carry a "backend" tag, morphisms embed both
// endpoint objects, and nlohmann keeps keys sorted, so dumps are
// byte-reproducible.

inline json to_json(const BaseObject& x) {
  switch (x.backend) {
    case Backend::finset:
      return json{{"backend", "finset"}, {"size", x.size}};
    case Backend::fingraph:
      return json{{"backend", "fingraph"},
                  {"vertices", x.vertices},
                  {"arrows", x.arrows},
                  {"src", x.src},
                  {"tgt", x.tgt}};
    case Backend::finmod:
      return json{{"backend", "finmod"}, {"q", x.q}, {"rank", x.rank}};
  }
  throw Error("to_json: bad backend");
}

inline BaseObject object_from_json(const json& j) {
  try {
    const std::string bk = j.at("backend").get<std::string>();
    if (bk == "finset") return finset_obj(j.at("size").get<int>());
    if (bk == "fingraph") {
      auto x = fingraph_obj(j.at("vertices").get<int>(),
                            j.at("src").get<std::vector<int>>(),
                            j.at("tgt").get<std::vector<int>>());
      if (x.arrows != j.at("arrows").get<int>())
        throw ParseError("fingraph object: arrows field disagrees with src/tgt");
      return x;
    }
    if (bk == "finmod")
      return finmod_obj(j.at("q").get<int>(), j.at("rank").get<int>());
    throw ParseError("unknown backend tag: " + bk);
  } catch (const json::exception& e) {
    throw ParseError(std::string("object: ") + e.what());
  }
}

inline json to_json(const BaseMorphism& f) {
  json j{{"dom", to_json(f.dom)}, {"cod", to_json(f.cod)}};
  switch (f.dom.backend) {
    case Backend::finset: j["map"] = f.map; break;
    case Backend::fingraph:
      j["vmap"] = f.vmap;
      j["amap"] = f.amap;
      break;
    case Backend::finmod: j["matrix"] = f.matrix; break;
  }
  return j;
}

inline BaseMorphism morphism_from_json(const json& j) {
  try {
    BaseObject dom = object_from_json(j.at("dom"));
    BaseObject cod = object_from_json(j.at("cod"));
    switch (dom.backend) {
      case Backend::finset:
        return finset_mor(dom, cod, j.at("map").get<std::vector<int>>());
      case Backend::fingraph:
        return fingraph_mor(dom, cod, j.at("vmap").get<std::vector<int>>(),
                            j.at("amap").get<std::vector<int>>());
      case Backend::finmod:
        return finmod_mor(
            dom, cod, j.at("matrix").get<std::vector<std::vector<int>>>());
    }
    throw ParseError("morphism: bad backend");
  } catch (const json::exception& e) {
    throw ParseError(std::string("morphism: ") + e.what());
  }
}

inline json to_json(const Arrow& a) {
  return json{{"dom", to_json(a.dom())},
              {"cod", to_json(a.cod())},
              {"mor", to_json(a.mor)}};
}

inline Arrow arrow_from_json(const json& j) {
  try {
    Arrow a(morphism_from_json(j.at("mor")));
    if (!(a.dom() == object_from_json(j.at("dom"))) ||
        !(a.cod() == object_from_json(j.at("cod"))))
      throw ParseError("arrow: dom/cod disagree with mor");
    return a;
  } catch (const json::exception& e) {
    throw ParseError(std::string("arrow: ") + e.what());
  }
}

inline json to_json(const Square& s) {
  return json{{"src", to_json(s.src)},
              {"tgt", to_json(s.tgt)},
              {"h", to_json(s.h)},
              {"k", to_json(s.k)}};
}

inline Square square_from_json(const json& j) {
  try {
    return Square(arrow_from_json(j.at("src")), arrow_from_json(j.at("tgt")),
                  morphism_from_json(j.at("h")), morphism_from_json(j.at("k")));
  } catch (const json::exception& e) {
    throw ParseError(std::string("square: ") + e.what());
  }
}

inline json to_json(const GeneratingSet& g) {
  json arr = json::array();
  for (const auto& e : g.entries)
    arr.push_back(json{{"name", e.name}, {"arrow", to_json(e.arrow)}});
  return json{{"generators", arr}};
}

inline GeneratingSet genset_from_json(const json& j) {
  try {
    GeneratingSet g;
    for (const auto& e : j.at("generators"))
      g.entries.push_back({e.at("name").get<std::string>(),
                           arrow_from_json(e.at("arrow"))});
    if (g.entries.empty())
      throw ParseError("generating set: empty generator list");
    return g;
  } catch (const json::exception& e) {
    throw ParseError(std::string("generating set: ") + e.what());
  }
}

/// Canonical cache key for an arrow (compact dump of its sorted-key JSON).
inline std::string arrow_key(const Arrow& a) { return to_json(a).dump(); }
inline std::string square_key(const Square& s) { return to_json(s).dump(); }

}  // namespace nwfs
