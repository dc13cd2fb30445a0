// Copyright 2026 The qualplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <sstream>

#include "qualplan.hpp"

namespace qualplan {
namespace {

TEST(TraceTest, WriteThenParse) {
  auto room = generate_gridworld(reference_room());
  const auto& m = room.base();
  auto vi = value_iteration(m);
  std::ostringstream out;
  write_trace(out, vi.trace, m.scale(), [&](std::size_t s) { return m.state_name(s); },
              [&](std::size_t a) { return m.action_name(a); });
  std::istringstream in(out.str());
  auto lines = parse_trace(in);
  ASSERT_EQ(lines.size(), (vi.sweeps + 1) * m.num_states());
  const auto& first = lines[7 + 6];  // sweep 1, s33
  EXPECT_EQ(first.sweep, 1u);
  EXPECT_EQ(first.state, "s33");
  EXPECT_EQ(first.value, "1");
  EXPECT_EQ(first.actions, (std::vector<std::string>{"S", "D", "R"}));
  EXPECT_TRUE(lines[0].actions.empty());
  std::ostringstream again;
  for (const auto& l : lines) {
    again << "sweep=" << l.sweep << " state=" << l.state << " value=" << l.value << " actions={";
    for (std::size_t i = 0; i < l.actions.size(); ++i) again << (i ? "," : "") << l.actions[i];
    again << "}\n";
  }
  EXPECT_EQ(again.str(), out.str());
}

TEST(TraceTest, MalformedLines) {
  for (const char* bad : {"sweep=x state=a value=1 actions={}", "sweep=1 state=a value=1",
                          "sweep=1 state=a value=1 actions=S", "sweep=1 state=a value=1 actions={} extra=2",
                          "sweep=1 state"}) {
    std::istringstream in(bad);
    EXPECT_THROW(parse_trace(in), ParseError) << bad;
  }
  std::istringstream blank("\n  \n");
  EXPECT_TRUE(parse_trace(blank).empty());
}

TEST(TraceTest, RepresentativeKeepsIncumbent) {
  std::vector<ActionId> optimal{1, 3, 4};
  EXPECT_EQ(detail::pick_representative(optimal, std::nullopt), 1u);
  EXPECT_EQ(detail::pick_representative(optimal, 4), 4u);
  EXPECT_EQ(detail::pick_representative(optimal, 2), 1u);
  EXPECT_THROW(detail::pick_representative({}, std::nullopt), InvalidArgument);
}

}  // namespace
}  // namespace qualplan
