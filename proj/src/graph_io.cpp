#include "kmsgraph/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "kmsgraph/detail/format.hpp"

namespace kmsgraph {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw Error(Error::Kind::InvalidInput, "line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& token, int line) {
  size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    fail(line, "expected a number, got '" + token + "'");
  }
  if (used != token.size()) fail(line, "expected a number, got '" + token + "'");
  return value;
}

GraphDocument parse_text(const std::string& text) {
  GraphDocument doc;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string stripped = raw.substr(0, raw.find('#'));
    std::istringstream words(stripped);
    std::vector<std::string> tok;
    std::string w;
    while (words >> w) tok.push_back(w);
    if (tok.empty()) continue;

    if (tok[0] == "vertex") {
      if (tok.size() != 2) fail(line, "vertex takes exactly one identifier");
      doc.vertices.push_back(tok[1]);
    } else if (tok[0] == "profile") {
      if (tok.size() != 2) fail(line, "profile takes exactly one name");
      doc.profiles.push_back(tok[1]);
    } else if (tok[0] == "edge") {
      if (tok.size() < 5) fail(line, "edge takes id, source, target and weight");
      GraphDocument::Edge e;
      e.id = tok[1];
      e.src = tok[2];
      e.dst = tok[3];
      e.weight = parse_number(tok[4], line);
      for (size_t i = 5; i < tok.size(); ++i) {
        size_t eq = tok[i].find('=');
        if (eq == std::string::npos || eq == 0)
          fail(line, "expected PROFILE=WEIGHT, got '" + tok[i] + "'");
        std::string name = tok[i].substr(0, eq);
        double value = parse_number(tok[i].substr(eq + 1), line);
        if (!e.overrides.emplace(name, value).second)
          fail(line, "duplicate override for profile '" + name + "'");
      }
      doc.edges.push_back(std::move(e));
    } else {
      fail(line, "unknown directive '" + tok[0] + "'");
    }
  }
  return doc;
}

void validate(const GraphDocument& doc) {
  for (const auto& e : doc.edges)
    for (const auto& [name, value] : e.overrides) {
      (void)value;
      if (std::find(doc.profiles.begin(), doc.profiles.end(), name) ==
          doc.profiles.end())
        throw Error(Error::Kind::InvalidInput,
                    "edge " + e.id + " overrides undeclared profile '" + name + "'");
    }
}

}  // namespace

bool GraphDocument::has_profile(const std::string& name) const {
  return std::find(profiles.begin(), profiles.end(), name) != profiles.end();
}

Graph GraphDocument::build(const std::string& profile, const Limits& limits) const {
  if (!profile.empty() && !has_profile(profile))
    throw Error(Error::Kind::InvalidInput, "unknown profile '" + profile + "'");
  std::vector<Graph::EdgeDecl> decls;
  decls.reserve(edges.size());
  for (const auto& e : edges) {
    double w = e.weight;
    if (!profile.empty()) {
      auto it = e.overrides.find(profile);
      if (it != e.overrides.end()) w = it->second;
    }
    decls.push_back(Graph::EdgeDecl{e.id, e.src, e.dst, w});
  }
  return Graph(vertices, decls, limits);
}

nlohmann::ordered_json GraphDocument::to_json() const {
  nlohmann::ordered_json j;
  j["vertices"] = vertices;
  j["profiles"] = profiles;
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : edges) {
    nlohmann::ordered_json je;
    je["id"] = e.id;
    je["src"] = e.src;
    je["dst"] = e.dst;
    je["weight"] = e.weight;
    if (!e.overrides.empty()) {
      nlohmann::ordered_json jo;
      for (const auto& [name, value] : e.overrides) jo[name] = value;
      je["overrides"] = jo;
    }
    j["edges"].push_back(je);
  }
  return j;
}

GraphDocument GraphDocument::from_json(const nlohmann::ordered_json& j) {
  GraphDocument doc;
  try {
    doc.vertices = j.at("vertices").get<std::vector<std::string>>();
    if (j.contains("profiles"))
      doc.profiles = j.at("profiles").get<std::vector<std::string>>();
    for (const auto& je : j.at("edges")) {
      Edge e;
      e.id = je.at("id").get<std::string>();
      e.src = je.at("src").get<std::string>();
      e.dst = je.at("dst").get<std::string>();
      e.weight = je.at("weight").get<double>();
      if (je.contains("overrides"))
        for (const auto& [name, value] : je.at("overrides").items())
          e.overrides[name] = value.get<double>();
      doc.edges.push_back(std::move(e));
    }
  } catch (const nlohmann::ordered_json::exception& ex) {
    throw Error(Error::Kind::InvalidInput,
                std::string("malformed graph document: ") + ex.what());
  }
  validate(doc);
  return doc;
}

std::string GraphDocument::dump_text() const {
  std::string out;
  for (const auto& v : vertices) out += "vertex " + v + "\n";
  for (const auto& p : profiles) out += "profile " + p + "\n";
  for (const auto& e : edges) {
    out += "edge " + e.id + " " + e.src + " " + e.dst + " " +
           detail::format_double(e.weight);
    for (const auto& [name, value] : e.overrides)
      out += " " + name + "=" + detail::format_double(value);
    out += "\n";
  }
  return out;
}

GraphDocument GraphDocument::parse(const std::string& text) {
  size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::ordered_json j;
    try {
      j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::ordered_json::exception& ex) {
      throw Error(Error::Kind::InvalidInput,
                  std::string("malformed JSON: ") + ex.what());
    }
    return from_json(j);
  }
  GraphDocument doc = parse_text(text);
  validate(doc);
  return doc;
}

GraphDocument GraphDocument::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(Error::Kind::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace kmsgraph
