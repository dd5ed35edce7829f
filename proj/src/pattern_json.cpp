#include "tprim/pattern_json.hpp"

#include <fstream>
#include <sstream>

#include "tprim/error.hpp"

namespace tprim {

using nlohmann::json;

namespace {

int get_int(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw Error(ErrorKind::ParseError, std::string("missing key \"") + key + "\"");
  if (!it->is_number_integer()) throw Error(ErrorKind::ParseError, std::string("\"") + key + "\" is not an integer");
  return it->get<int>();
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace

PatternTensor tensor_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "pattern tensor must be a JSON object");
  int order = get_int(doc, "order");
  int dim = get_int(doc, "dim");
  auto it = doc.find("entries");
  if (it == doc.end()) throw Error(ErrorKind::ParseError, "missing key \"entries\"");
  if (!it->is_array()) throw Error(ErrorKind::ParseError, "\"entries\" is not an array");
  std::vector<Tuple> entries;
  entries.reserve(it->size());
  for (const auto& e : *it) {
    if (!e.is_array()) throw Error(ErrorKind::ParseError, "entry is not an array");
    Tuple t;
    for (const auto& v : e) {
      if (!v.is_number_integer()) throw Error(ErrorKind::ParseError, "entry index is not an integer");
      t.push_back(v.get<int>());
    }
    entries.push_back(std::move(t));
  }
  return make_pattern_tensor(order, dim, entries);
}

json tensor_to_json(const PatternTensor& t) {
  json entries = json::array();
  for (const auto& tuple : t.tuples()) entries.push_back(tuple);
  return json{{"order", t.order()}, {"dim", t.dim()}, {"entries", std::move(entries)}};
}

PatternTensor parse_tensor(const std::string& text) { return tensor_from_json(parse_text(text)); }

PatternTensor read_tensor_file(const std::filesystem::path& path) { return parse_tensor(slurp(path)); }

void write_tensor_file(const std::filesystem::path& path, const PatternTensor& t) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path.string());
  out << tensor_to_json(t).dump() << '\n';
}

std::vector<PatternTensor> read_replay_file(const std::filesystem::path& path) {
  json doc = parse_text(slurp(path));
  if (!doc.is_array()) throw Error(ErrorKind::ParseError, "replay file must be a JSON array");
  std::vector<PatternTensor> out;
  for (const auto& item : doc) out.push_back(tensor_from_json(item));
  return out;
}

}  // namespace tprim
