#pragma once

#include <string>
#include <vector>

#include "tnet/network.hpp"

namespace tnet {

struct Gadget;

// Network interchange format. Tensor values are decimal strings so that
// arbitrarily large entries survive the round trip; vertex ids are
// renumbered 0..N-1 in the order they are listed.
std::string network_to_json(const TensorNetwork& net, int indent = -1);
TensorNetwork network_from_json(const std::string& text);

std::string gadget_to_json(const Gadget& g, int indent = -1);
Gadget gadget_from_json(const std::string& text);

TensorNetwork read_network_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace tnet
