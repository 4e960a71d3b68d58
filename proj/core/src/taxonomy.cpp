#include "macronet/taxonomy.hpp"

#include <cctype>

#include "macronet/error.hpp"

namespace macronet {

namespace {

struct SectorNames {
  Sector sector;
  std::string_view canonical;
  std::string_view alias;
  std::string_view id;
};

constexpr std::array<SectorNames, 8> kNames = {{
    {Sector::EcbNcb, "ECB&NCB", "ECB_NCB", "ECB_NCB"},
    {Sector::MfiExcl, "MFI excl. ECB&NCB", "MFI_EXCL_ECB_NCB", "MFI_EXCL"},
    {Sector::Icpf, "IC&PF", "IC_PF", "ICPF"},
    {Sector::FcExcl, "FC excl. MFI and IC&PF", "FC_EXCL", "FC_EXCL"},
    {Sector::Hh, "HH&NPISH", "HH_NPISH", "HH"},
    {Sector::Nfc, "NFC", "NFC", "NFC"},
    {Sector::Gg, "GG", "GG", "GG"},
    {Sector::Mfi, "MFI", "MFI", "MFI"},
}};

const SectorNames& names(Sector s) { return kNames[static_cast<std::size_t>(s)]; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view canonical_acronym(Sector s) { return names(s).canonical; }
std::string_view ascii_alias(Sector s) { return names(s).alias; }
std::string_view sector_id(Sector s) { return names(s).id; }

std::string_view macro_name(MacroSector m) {
  switch (m) {
    case MacroSector::Financial: return "FINANCIAL";
    case MacroSector::Real: return "REAL";
    case MacroSector::Public: return "PUBLIC";
  }
  return "?";
}

Sector parse_sector(std::string_view text) {
  const std::string_view t = trim(text);
  for (const auto& n : kNames) {
    if (t == n.canonical || t == n.alias || t == n.id) return n.sector;
  }
  throw Error(ErrorCode::UnknownSector, "'" + std::string(text) + "'");
}

MacroSector parse_macro(std::string_view text) {
  const std::string_view t = trim(text);
  for (MacroSector m : kMacroSectors) {
    if (t == macro_name(m)) return m;
  }
  throw Error(ErrorCode::UnknownSector, "unknown macro-sector '" + std::string(text) + "'");
}

bool is_leaf(Sector s) { return s != Sector::Mfi; }

MacroSector macro_sector_of(Sector s) {
  switch (s) {
    case Sector::EcbNcb:
    case Sector::MfiExcl:
    case Sector::Mfi:
    case Sector::Icpf:
    case Sector::FcExcl:
      return MacroSector::Financial;
    case Sector::Hh:
    case Sector::Nfc:
      return MacroSector::Real;
    case Sector::Gg:
      return MacroSector::Public;
  }
  return MacroSector::Financial;
}

std::vector<Sector> constituents(Sector s) {
  if (s == Sector::Mfi) return {Sector::EcbNcb, Sector::MfiExcl};
  return {s};
}

std::vector<Sector> leaves_of(MacroSector m) {
  std::vector<Sector> out;
  for (Sector s : kLeafSectors) {
    if (macro_sector_of(s) == m) out.push_back(s);
  }
  return out;
}

}  // namespace macronet
