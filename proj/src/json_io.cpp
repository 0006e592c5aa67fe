#include "tnet/json_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "tnet/error.hpp"
#include "tnet/gadgets.hpp"

namespace tnet {

using nlohmann::json;

namespace {

json tensor_json(const Tensor& t) {
  json values = json::array();
  for (const Count& c : t.values()) values.push_back(c.get_str());
  return json{{"kind", t.is_symmetric() ? "symmetric" : "dense"},
              {"arity", t.arity()},
              {"values", std::move(values)}};
}

Count parse_count(const json& v) {
  std::string s;
  if (v.is_string()) {
    s = v.get<std::string>();
  } else if (v.is_number_unsigned() || v.is_number_integer()) {
    s = v.dump();
  } else {
    throw Error(ErrorKind::SyntaxError, "tensor value must be a decimal string");
  }
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorKind::SyntaxError, "tensor value '" + s + "' is not a nonnegative integer");
  }
  return Count(s, 10);
}

Tensor tensor_from(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int arity = j.at("arity").get<int>();
  std::vector<Count> values;
  for (const json& v : j.at("values")) values.push_back(parse_count(v));
  if (kind == "dense") return Tensor::dense(arity, std::move(values));
  if (kind == "symmetric") return Tensor::symmetric(arity, std::move(values));
  throw Error(ErrorKind::SyntaxError, "unknown tensor kind '" + kind + "'");
}

json network_json(const TensorNetwork& net) {
  json vertices = json::array();
  for (int v = 0; v < net.vertex_count(); ++v) {
    vertices.push_back(json{{"id", v}, {"tensor", tensor_json(net.tensor(v))}});
  }
  json edges = json::array();
  for (const InternalEdge& e : net.edges()) {
    edges.push_back(json::array({json::array({e.a.vertex, e.a.port}), json::array({e.b.vertex, e.b.port})}));
  }
  json external = json::array();
  for (const ExternalEdge& x : net.external()) {
    external.push_back(json::array({json::array({x.end.vertex, x.end.port}), x.label}));
  }
  return json{{"vertices", std::move(vertices)}, {"edges", std::move(edges)}, {"external", std::move(external)}};
}

TensorNetwork network_from(const json& j) {
  std::map<long long, int> index;
  std::vector<Tensor> tensors;
  for (const json& v : j.at("vertices")) {
    long long id = v.at("id").get<long long>();
    if (!index.emplace(id, static_cast<int>(tensors.size())).second) {
      throw Error(ErrorKind::SyntaxError, "duplicate vertex id " + std::to_string(id));
    }
    tensors.push_back(tensor_from(v.at("tensor")));
  }
  auto endpoint = [&](const json& e) {
    long long id = e.at(0).get<long long>();
    auto it = index.find(id);
    if (it == index.end()) {
      throw Error(ErrorKind::DanglingEndpoint, "edge references unknown vertex " + std::to_string(id));
    }
    return Endpoint{it->second, e.at(1).get<int>()};
  };
  std::vector<InternalEdge> edges;
  if (j.contains("edges")) {
    for (const json& e : j.at("edges")) edges.push_back(InternalEdge{endpoint(e.at(0)), endpoint(e.at(1))});
  }
  std::vector<ExternalEdge> external;
  if (j.contains("external")) {
    for (const json& x : j.at("external")) {
      external.push_back(ExternalEdge{endpoint(x.at(0)), x.at(1).get<std::string>()});
    }
  }
  return TensorNetwork(std::move(tensors), std::move(edges), std::move(external));
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::SyntaxError, ex.what());
  }
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::SyntaxError, ex.what());
  }
}

}  // namespace

std::string network_to_json(const TensorNetwork& net, int indent) {
  return network_json(net).dump(indent);
}

TensorNetwork network_from_json(const std::string& text) {
  json j = parse(text);
  return guarded([&] { return network_from(j); });
}

std::string gadget_to_json(const Gadget& g, int indent) {
  json j = network_json(g.body);
  j["ports"] = g.ports;
  return j.dump(indent);
}

Gadget gadget_from_json(const std::string& text) {
  json j = parse(text);
  return guarded([&] {
    Gadget g;
    g.body = network_from(j);
    g.ports = j.at("ports").get<std::vector<std::string>>();
    return g;
  });
}

TensorNetwork read_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return network_from_json(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << text;
}

}  // namespace tnet
