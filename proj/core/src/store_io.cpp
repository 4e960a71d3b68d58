#include <istream>
#include <iterator>
#include <ostream>

#include <nlohmann/json.hpp>

#include "macronet/series.hpp"

namespace macronet {

namespace {

using nlohmann::json;

constexpr int kStoreVersion = 1;

json optional_quarter(const std::optional<Quarter>& q) { return q ? json(q->str()) : json(nullptr); }

[[noreturn]] void corrupt(const std::string& what) { throw Error(ErrorCode::CorruptStore, what); }

const json& field(const json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) corrupt(std::string("missing field '") + name + "'");
  return obj.at(name);
}

std::string string_field(const json& obj, const char* name) {
  const json& v = field(obj, name);
  if (!v.is_string()) corrupt(std::string("field '") + name + "' is not a string");
  return v.get<std::string>();
}

}  // namespace

std::string save_store(const SeriesStore& store) {
  json doc;
  doc["macronet_store"] = kStoreVersion;

  const Manifest& m = store.manifest();
  json sources = json::array();
  for (const auto& s : m.sources) sources.push_back({{"name", s.name}, {"rows", s.rows}});
  doc["manifest"] = {
      {"sources", sources},
      {"ingested_at", m.ingested_at ? json(*m.ingested_at) : json(nullptr)},
      {"period_from", optional_quarter(m.period_from)},
      {"period_to", optional_quarter(m.period_to)},
  };

  json series = json::array();
  for (const auto& [key, s] : store.series()) {
    json values = json::object();
    for (const auto& [q, v] : s.values) values[q.str()] = v.str();
    series.push_back({
        {"key", key.str()},
        {"unit", unit_name(s.unit)},
        {"adjustment", adjustment_name(s.adjustment)},
        {"gappy", s.gappy},
        {"values", std::move(values)},
    });
  }
  doc["series"] = std::move(series);
  return doc.dump(2) + "\n";
}

void save_store(const SeriesStore& store, std::ostream& sink) { sink << save_store(store); }

SeriesStore load_store(std::string_view text) {
  json doc = json::parse(text.begin(), text.end(), nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) corrupt("not a complete JSON document");
  if (!doc.is_object()) corrupt("top level is not an object");
  if (!doc.contains("macronet_store")) {
    throw Error(ErrorCode::FormatVersionError, "missing macronet_store version header");
  }
  const json& version = doc.at("macronet_store");
  if (!version.is_number_integer() || version.get<int>() != kStoreVersion) {
    throw Error(ErrorCode::FormatVersionError, "unsupported store version " + version.dump());
  }

  SeriesStore store;
  try {
    const json& manifest = field(doc, "manifest");
    for (const json& src : field(manifest, "sources")) {
      const json& rows = field(src, "rows");
      if (!rows.is_number_unsigned()) corrupt("source rows is not a count");
      store.manifest().sources.push_back(SourceInfo{string_field(src, "name"),
                                                    rows.get<std::size_t>()});
    }
    const json& stamp = field(manifest, "ingested_at");
    if (!stamp.is_null()) store.manifest().ingested_at = string_field(manifest, "ingested_at");
    for (const char* name : {"period_from", "period_to"}) {
      const json& q = field(manifest, name);
      if (q.is_null()) continue;
      auto& slot = std::string_view(name) == "period_from" ? store.manifest().period_from
                                                          : store.manifest().period_to;
      slot = Quarter::parse(string_field(manifest, name));
    }

    const json& series = field(doc, "series");
    if (!series.is_array()) corrupt("series is not an array");
    for (const json& entry : series) {
      QuarterlySeries s{SeriesKey::parse(string_field(entry, "key")),
                        parse_unit(string_field(entry, "unit")),
                        parse_adjustment(string_field(entry, "adjustment")), false, {}};
      const json& gappy = field(entry, "gappy");
      if (!gappy.is_boolean()) corrupt("gappy is not a boolean");
      s.gappy = gappy.get<bool>();
      const json& values = field(entry, "values");
      if (!values.is_object()) corrupt("values is not an object");
      for (const auto& [q, v] : values.items()) {
        if (!v.is_string()) corrupt("amount is not a decimal string");
        const Amount amount = Amount::parse(v.get<std::string>());
        if (s.key.is_stock() && amount < Amount{}) {
          throw Error(ErrorCode::NegativeStock, s.key.str() + " at " + q);
        }
        s.values.emplace(Quarter::parse(q), amount);
      }
      if (store.contains(s.key)) corrupt("duplicate series " + s.key.str());
      store.insert(std::move(s));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CorruptStore) throw;
    corrupt(e.what());
  }
  return store;
}

SeriesStore load_store(std::istream& source) {
  std::string text((std::istreambuf_iterator<char>(source)), std::istreambuf_iterator<char>());
  return load_store(text);
}

}  // namespace macronet
