// Copyright 2026 The MDI-QCT Simulator Authors
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

#include "mdiqct/transcript_io.hpp"

#include <json.hpp>
#include <string>

#include "mdiqct/adversaries.hpp"
#include "mdiqct/errors.hpp"

namespace mdiqct {

namespace {

using nlohmann::ordered_json;

ordered_json label_json(const std::optional<StateLabel>& label) {
    if (!label) {
        return nullptr;
    }
    return ordered_json{{"basis", label->basis()}, {"bit", label->bit()}};
}

template <typename T>
ordered_json optional_json(const std::optional<T>& value) {
    if (!value) {
        return nullptr;
    }
    return *value;
}

std::optional<StateLabel> parse_label(const ordered_json& j) {
    if (j.is_null()) {
        return std::nullopt;
    }
    return StateLabel(j.at("basis").get<int>(), j.at("bit").get<int>());
}

template <typename Enum, std::size_t N>
Enum parse_enum(const std::string& text, const Enum (&values)[N], const char* what) {
    for (Enum v : values) {
        if (to_string(v) == text) {
            return v;
        }
    }
    throw ParameterError(std::string("unknown ") + what + " '" + text + "'");
}

std::string label_cell(const std::optional<StateLabel>& label) {
    if (!label) {
        return "";
    }
    return std::to_string(label->basis()) + std::to_string(label->bit());
}

template <typename T>
std::string optional_cell(const std::optional<T>& value) {
    return value ? std::to_string(*value) : std::string();
}

}  // namespace

std::string to_json_line(const Transcript& t) {
    ordered_json j;
    j["mode"] = to_string(t.mode);
    j["adversary"] = t.adversary;
    j["rounds"] = t.rounds;
    j["outcome"] = to_string(t.outcome);
    j["bob_label"] = label_json(t.bob_label);
    j["bob_random_bit"] = optional_json(t.bob_random_bit);
    j["revealed_label"] = label_json(t.revealed_label);
    j["verdict"] = to_string(t.verdict);
    j["abort_reason"] = to_string(t.abort_reason);
    j["coin"] = optional_json(t.coin);
    j["cause"] = t.cause ? ordered_json(to_string(*t.cause)) : ordered_json(nullptr);
    j["pulse_index"] = optional_json(t.pulse_index);
    j["multi_photon_slots"] = t.multi_photon_slots;
    j["multi_photon_at_success"] = t.multi_photon_at_success;
    j["target_coin"] = optional_json(t.target_coin);
    j["leaked_guess"] = label_json(t.leaked_guess);
    return j.dump();
}

Transcript from_json_line(std::string_view line) {
    try {
        const ordered_json j = ordered_json::parse(line);
        Transcript t;
        t.mode = parse_mode(j.at("mode").get<std::string>());
        const auto adversary = j.at("adversary").get<std::string>();
        bool known = false;
        for (std::string_view name : kAdversaryNames) {
            if (name == adversary) {
                t.adversary = name;
                known = true;
            }
        }
        if (!known) {
            throw ParameterError("unknown adversary '" + adversary + "'");
        }
        t.rounds = j.at("rounds").get<std::uint64_t>();
        static constexpr BsmOutcome outcomes[] = {BsmOutcome::PsiPlus, BsmOutcome::PsiMinus, BsmOutcome::Failure};
        t.outcome = parse_enum(j.at("outcome").get<std::string>(), outcomes, "outcome");
        t.bob_label = parse_label(j.at("bob_label")).value_or(StateLabel{});
        if (!j.at("bob_random_bit").is_null()) {
            t.bob_random_bit = j.at("bob_random_bit").get<int>();
        }
        t.revealed_label = parse_label(j.at("revealed_label"));
        static constexpr Verdict verdicts[] = {Verdict::Accept, Verdict::Abort};
        t.verdict = parse_enum(j.at("verdict").get<std::string>(), verdicts, "verdict");
        static constexpr AbortReason reasons[] = {AbortReason::None, AbortReason::CheatingDetected,
                                                  AbortReason::NoSuccessfulSlot};
        t.abort_reason = parse_enum(j.at("abort_reason").get<std::string>(), reasons, "abort reason");
        if (!j.at("coin").is_null()) {
            t.coin = j.at("coin").get<int>();
        }
        if (!j.at("cause").is_null()) {
            static constexpr EventCause causes[] = {EventCause::BothPhotons, EventCause::PhotonDark,
                                                    EventCause::DarkDark, EventCause::Failure};
            t.cause = parse_enum(j.at("cause").get<std::string>(), causes, "cause");
        }
        if (!j.at("pulse_index").is_null()) {
            t.pulse_index = j.at("pulse_index").get<std::uint32_t>();
        }
        t.multi_photon_slots = j.at("multi_photon_slots").get<std::uint32_t>();
        t.multi_photon_at_success = j.at("multi_photon_at_success").get<bool>();
        if (!j.at("target_coin").is_null()) {
            t.target_coin = j.at("target_coin").get<int>();
        }
        t.leaked_guess = parse_label(j.at("leaked_guess"));
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("malformed transcript record: ") + e.what());
    }
}

std::string_view csv_header() {
    return "mode,adversary,rounds,outcome,bob_label,bob_random_bit,revealed_label,verdict,abort_reason,coin,cause,"
           "pulse_index,multi_photon_slots,multi_photon_at_success,target_coin,leaked_guess";
}

std::string to_csv_row(const Transcript& t) {
    std::string row;
    auto cell = [&row](std::string_view value) {
        if (!row.empty()) {
            row += ',';
        }
        row += value;
    };
    cell(to_string(t.mode));
    cell(t.adversary);
    cell(std::to_string(t.rounds));
    cell(to_string(t.outcome));
    cell(label_cell(t.bob_label));
    cell(optional_cell(t.bob_random_bit));
    cell(label_cell(t.revealed_label));
    cell(to_string(t.verdict));
    cell(to_string(t.abort_reason));
    cell(optional_cell(t.coin));
    cell(t.cause ? to_string(*t.cause) : "");
    cell(optional_cell(t.pulse_index));
    cell(std::to_string(t.multi_photon_slots));
    cell(t.multi_photon_at_success ? "1" : "0");
    cell(optional_cell(t.target_coin));
    cell(label_cell(t.leaked_guess));
    return row;
}

}  // namespace mdiqct
