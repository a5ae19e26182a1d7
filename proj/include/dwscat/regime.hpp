// regime.hpp — classification tags shared by the spectral and mean-field views.

#pragma once

#include <string_view>

namespace dwscat {

enum class RegimeTag { Rabi, SeparatrixAdjacent, SelfTrapped };

inline std::string_view to_string(RegimeTag t) {
    switch (t) {
        case RegimeTag::Rabi: return "Rabi";
        case RegimeTag::SeparatrixAdjacent: return "SeparatrixAdjacent";
        case RegimeTag::SelfTrapped: return "SelfTrapped";
    }
    return "?";
}

}  // namespace dwscat
