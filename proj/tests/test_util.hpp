#pragma once

#include <string>

#include "onred/instance_format.hpp"

inline onred::Instance inst(const std::string& text) { return onred::parse_instance_text(text); }

inline onred::DecisionSeq bits(std::initializer_list<int> v) {
  onred::DecisionSeq out;
  for (int b : v) out.push_back(onred::bit_of(b != 0));
  return out;
}
