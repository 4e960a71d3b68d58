#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace macronet {

// Euro-area institutional sectors. The first seven are leaves; Mfi is the
// composite of the Eurosystem and the MFIs excluding it.
enum class Sector {
  EcbNcb,
  MfiExcl,
  Icpf,
  FcExcl,
  Hh,
  Nfc,
  Gg,
  Mfi,
};

enum class MacroSector {
  Financial,
  Real,
  Public,
};

inline constexpr std::array<Sector, 7> kLeafSectors = {
    Sector::EcbNcb, Sector::MfiExcl, Sector::Icpf, Sector::FcExcl,
    Sector::Hh,     Sector::Nfc,     Sector::Gg,
};

inline constexpr std::array<Sector, 8> kAllSectors = {
    Sector::EcbNcb, Sector::MfiExcl, Sector::Icpf, Sector::FcExcl,
    Sector::Hh,     Sector::Nfc,     Sector::Gg,   Sector::Mfi,
};

inline constexpr std::array<MacroSector, 3> kMacroSectors = {
    MacroSector::Financial, MacroSector::Real, MacroSector::Public};

/// Display acronym as printed in the sector table, e.g. "IC&PF",
/// "MFI excl. ECB&NCB".
std::string_view canonical_acronym(Sector s);

/// ASCII form used in CSV keys, JSON and CLI arguments, e.g. "IC_PF".
std::string_view ascii_alias(Sector s);

/// Short machine identifier used in serialized outputs ("ICPF", "MFI_EXCL").
std::string_view sector_id(Sector s);

std::string_view macro_name(MacroSector m);

/// Resolves a canonical acronym, ASCII alias or identifier after trimming
/// surrounding whitespace. Throws Error(UnknownSector).
Sector parse_sector(std::string_view text);

MacroSector parse_macro(std::string_view text);

bool is_leaf(Sector s);
MacroSector macro_sector_of(Sector s);

/// Leaf sectors making up `s`, in enumeration order.
std::vector<Sector> constituents(Sector s);

/// Leaf sectors belonging to a macro-sector, in enumeration order.
std::vector<Sector> leaves_of(MacroSector m);

}  // namespace macronet
