#pragma once

#include <string>
#include <vector>

#include "manna/instance.hpp"
#include "manna/rational.hpp"

namespace testutil {

inline manna::Rat Q(const std::string& text) { return *manna::parse_rat(text); }

inline manna::Segment seg(const char* slope, const char* length) {
  return {Q(slope), Q(length)};
}

// Linear function: one segment with the padded length.
inline manna::Segment lin(const char* slope) {
  return {Q(slope), 1 + manna::kLastSegmentPad};
}

inline std::string data_path(const char* name) {
  return std::string(MANNA_DATA_DIR) + "/" + name;
}

// Example 1: u_A = x_A1 - 2 x_A2, u_B = x_B1 - 3 x_B2, half shares.
inline manna::Instance example1() {
  manna::Instance inst;
  inst.numAgents = 2;
  inst.numItems = 2;
  inst.utility = {{{lin("1")}, {lin("-2")}}, {{lin("1")}, {lin("-3")}}};
  inst.endowment = {{Q("1/2"), Q("1/2")}, {Q("1/2"), Q("1/2")}};
  return inst;
}

// Appendix A: u_a = -10x1 - 2x2 - x3, u_b = -x1 - 100x2 - 100x3, CEEI.
inline manna::Instance appendix_a() {
  manna::Instance inst;
  inst.numAgents = 2;
  inst.numItems = 3;
  inst.setting = manna::Setting::CEEI;
  inst.utility = {{{lin("-10")}, {lin("-2")}, {lin("-1")}},
                  {{lin("-1")}, {lin("-100")}, {lin("-100")}}};
  inst.endowment = {{Q("1/2"), Q("1/2"), Q("1/2")},
                    {Q("1/2"), Q("1/2"), Q("1/2")}};
  return inst;
}

// One agent owning one unit of one bad with slope -1.
inline manna::Instance single_bad() {
  manna::Instance inst;
  inst.numAgents = 1;
  inst.numItems = 1;
  inst.utility = {{{lin("-1")}}};
  inst.endowment = {{Q("1")}};
  return inst;
}

}  // namespace testutil
