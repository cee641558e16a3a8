// Copyright 2026 the qleak authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QLEAK_IO_HPP
#define QLEAK_IO_HPP

#include <string>

#include "qleak/game.hpp"
#include "qleak/nonsignalling.hpp"
#include "qleak/vulnerability.hpp"

// Single-header nlohmann/json from vendor/.
#include <json.hpp>

namespace qleak {

using Json = nlohmann::json;

Json channel_to_json(const InteractiveChannel& c);
InteractiveChannel channel_from_json(const Json& j);

Json game_to_json(const NonLocalGame& g);
NonLocalGame game_from_json(const Json& j);

Json game_strategy_to_json(const GameQuantumStrategy& s, const NonLocalGame& g);
GameQuantumStrategy game_strategy_from_json(const Json& j, const NonLocalGame& g);

Json joint_strategy_to_json(const QuantumJointStrategy& s, const InteractiveChannel& c,
                            int num_secrets);
QuantumJointStrategy joint_strategy_from_json(const Json& j, const InteractiveChannel& c);

Json generalised_strategy_to_json(const GeneralisedStrategy& s,
                                  const InteractiveChannel& c);
GeneralisedStrategy generalised_strategy_from_json(const Json& j,
                                                   const InteractiveChannel& c);

Json strategy_to_json(const DeterministicStrategy& s, const InteractiveChannel& c);
DeterministicStrategy strategy_from_json(const Json& j, const InteractiveChannel& c);

/// Reads a file, or stdin when path is "-".
std::string slurp(const std::string& path);
Json parse_json_text(const std::string& text, const std::string& where);

}  // namespace qleak

#endif  // QLEAK_IO_HPP
