#include "secplf/reports.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace secplf {

using nlohmann::json;

namespace {

json exact(const Rational& v) { return to_string(v); }

Rational read_exact(const json& j) { return parse_rational(j.get<std::string>()); }
Amount read_amount(const json& j) { return Amount(read_exact(j)); }

json step_record_json(const StepRecord& r) {
  json values = json::array();
  for (const auto& [k, v] : r.values) values.push_back({k, exact(v)});
  json out = {{"index", r.index}, {"kind", r.kind}, {"label", r.label}, {"values", values}, {"failed", r.failed}};
  if (!r.error.empty()) out["error"] = r.error;
  return out;
}

StepRecord step_record_from(const json& j) {
  StepRecord r;
  r.index = j.at("index").get<std::size_t>();
  r.kind = j.at("kind").get<std::string>();
  r.label = j.at("label").get<std::string>();
  for (const auto& kv : j.at("values")) r.values.emplace_back(kv.at(0).get<std::string>(), read_exact(kv.at(1)));
  r.failed = j.at("failed").get<bool>();
  r.error = j.value("error", std::string{});
  return r;
}

json guard_query_json(const GuardQuery& q) {
  return {{"step", q.step},
          {"asset", q.asset.str()},
          {"block", q.block},
          {"oracle", exact(q.oracle.value())},
          {"guarded", q.guarded},
          {"stored_before", exact(q.stored_before.value())},
          {"stored_after", exact(q.stored_after.value())},
          {"output", exact(q.output.value())},
          {"discrepancy", exact(q.discrepancy)},
          {"updated", q.updated}};
}

GuardQuery guard_query_from(const json& j) {
  GuardQuery q;
  q.step = j.at("step").get<std::size_t>();
  q.asset = AssetId(j.at("asset").get<std::string>());
  q.block = j.at("block").get<std::uint64_t>();
  q.oracle = read_amount(j.at("oracle"));
  q.guarded = j.at("guarded").get<bool>();
  q.stored_before = read_amount(j.at("stored_before"));
  q.stored_after = read_amount(j.at("stored_after"));
  q.output = read_amount(j.at("output"));
  q.discrepancy = read_exact(j.at("discrepancy"));
  q.updated = j.at("updated").get<bool>();
  return q;
}

json trace_json(const Trace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) steps.push_back(step_record_json(s));
  json queries = json::array();
  for (const auto& q : t.price_queries) queries.push_back(guard_query_json(q));
  return {{"steps", steps}, {"price_queries", queries}};
}

Trace trace_from(const json& j) {
  Trace t;
  for (const auto& s : j.at("steps")) t.steps.push_back(step_record_from(s));
  for (const auto& q : j.at("price_queries")) t.price_queries.push_back(guard_query_from(q));
  return t;
}

template <typename Fn>
auto parse_or_throw(std::string_view text, std::string_view what, Fn&& fn) {
  try {
    return fn(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string(what) + ": " + e.what());
  }
}

std::string money(const Rational& v) { return "$" + to_decimal(v, 4); }
std::string units(const Rational& v) { return to_decimal(v, 4); }

std::string fmt_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

template <typename T>
std::optional<T> parse_field(std::string_view s) {
  if (s.empty()) return std::nullopt;
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(Errc::ParseError, "bad number '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string trace_to_json(const Trace& trace) { return trace_json(trace).dump(2); }

Trace trace_from_json(std::string_view text) {
  return parse_or_throw(text, "trace", [](const json& j) { return trace_from(j); });
}

std::string attack_report_to_json(const AttackReport& r) {
  json plan = {{"adversary", r.plan.adversary.str()},
               {"flash_asset", r.plan.flash_asset.str()},
               {"deposit_asset", r.plan.deposit_asset.str()},
               {"borrow_asset", r.plan.borrow_asset.str()},
               {"flash_amount", exact(r.plan.flash_amount.value())},
               {"collateral_swap_in", exact(r.plan.collateral_swap_in.value())},
               {"pool", r.plan.target_pool.str()},
               {"venue", r.plan.venue}};
  json out = {{"plan", plan},
              {"guarded", r.guarded},
              {"epsilon", exact(r.epsilon)},
              {"outcome", std::string(to_string(r.outcome))},
              {"reverted_step", r.reverted_step ? json(*r.reverted_step) : json(nullptr)},
              {"revert_reason", r.revert_reason},
              {"theta", exact(r.theta)},
              {"pre_attack_oracle_usd", exact(r.pre_attack_oracle_usd.value())},
              {"deposited", exact(r.deposited.value())},
              {"max_l_usd", exact(r.max_l_usd.value())},
              {"planned_borrow", exact(r.planned_borrow.value())},
              {"planned_borrow_rejected", r.planned_borrow_rejected},
              {"collateral_price_used", exact(r.collateral_price_used.value())},
              {"borrow_limit_usd", exact(r.borrow_limit_usd.value())},
              {"borrowed", exact(r.borrowed.value())},
              {"predicted_g_usd", exact(r.predicted_g_usd)},
              {"realized_profit_usd", exact(r.realized_profit_usd)},
              {"note", r.note},
              {"trace", trace_json(r.trace)}};
  return out.dump(2);
}

AttackReport attack_report_from_json(std::string_view text) {
  return parse_or_throw(text, "attack report", [](const json& j) {
    AttackReport r;
    const json& p = j.at("plan");
    r.plan.adversary = AccountId(p.at("adversary").get<std::string>());
    r.plan.flash_asset = AssetId(p.at("flash_asset").get<std::string>());
    r.plan.deposit_asset = AssetId(p.at("deposit_asset").get<std::string>());
    r.plan.borrow_asset = AssetId(p.at("borrow_asset").get<std::string>());
    r.plan.flash_amount = read_amount(p.at("flash_amount"));
    r.plan.collateral_swap_in = read_amount(p.at("collateral_swap_in"));
    r.plan.target_pool = PairId::parse(p.at("pool").get<std::string>());
    r.plan.venue = p.at("venue").get<std::string>();
    r.guarded = j.at("guarded").get<bool>();
    r.epsilon = read_exact(j.at("epsilon"));
    std::string outcome = j.at("outcome").get<std::string>();
    if (outcome == "Success") r.outcome = TxStatus::Success;
    else if (outcome == "Reverted") r.outcome = TxStatus::Reverted;
    else if (outcome == "Rejected") r.outcome = TxStatus::Rejected;
    else throw Error(Errc::ParseError, "attack report: unknown outcome '" + outcome + "'");
    if (!j.at("reverted_step").is_null()) r.reverted_step = j.at("reverted_step").get<std::size_t>();
    r.revert_reason = j.at("revert_reason").get<std::string>();
    r.theta = read_exact(j.at("theta"));
    r.pre_attack_oracle_usd = read_amount(j.at("pre_attack_oracle_usd"));
    r.deposited = read_amount(j.at("deposited"));
    r.max_l_usd = read_amount(j.at("max_l_usd"));
    r.planned_borrow = read_amount(j.at("planned_borrow"));
    r.planned_borrow_rejected = j.at("planned_borrow_rejected").get<bool>();
    r.collateral_price_used = read_amount(j.at("collateral_price_used"));
    r.borrow_limit_usd = read_amount(j.at("borrow_limit_usd"));
    r.borrowed = read_amount(j.at("borrowed"));
    r.predicted_g_usd = read_exact(j.at("predicted_g_usd"));
    r.realized_profit_usd = read_exact(j.at("realized_profit_usd"));
    r.note = j.at("note").get<std::string>();
    r.trace = trace_from(j.at("trace"));
    return r;
  });
}

std::string format_attack_trace(const AttackReport& r) {
  std::ostringstream out;
  out << "attack by " << r.plan.adversary << " (" << (r.guarded ? "guarded" : "raw oracle")
      << " PLF, epsilon " << to_decimal(r.epsilon) << ")\n";
  for (const StepRecord& s : r.trace.steps) {
    out << "  " << s.index + 1 << ". " << s.label;
    if (s.kind == "swap" || s.kind == "venue_buy") {
      out << "  in " << units(*s.get("amount_in")) << ", out " << units(*s.get("amount_out"));
    } else if (s.kind == "borrow") {
      if (auto p = s.get("collateral_price_usd")) out << "  collateral priced " << money(*p);
      if (auto l = s.get("limit_usd")) out << ", limit " << money(*l);
      if (auto a = s.get("amount")) out << ", borrowed " << units(*a);
    } else if (auto a = s.get("amount")) {
      out << "  " << units(*a);
    }
    if (s.failed) out << "  FAILED: " << s.error;
    out << "\n";
  }
  for (const GuardQuery& q : r.trace.price_queries) {
    if (!q.guarded) continue;
    out << "  guard " << q.asset << " @ block " << q.block << ": oracle " << money(q.oracle.value()) << ", stored "
        << money(q.stored_before.value()) << " -> " << money(q.stored_after.value()) << ", price "
        << money(q.output.value()) << "\n";
  }
  out << "outcome: " << to_string(r.outcome);
  if (r.reverted_step) out << " at step " << *r.reverted_step + 1 << " (" << r.revert_reason << ")";
  out << "\n";
  out << "theta " << to_decimal(r.theta) << ", max(L) " << money(r.max_l_usd.value()) << ", L "
      << units(r.borrowed.value()) << " " << r.plan.borrow_asset << "\n";
  out << "realized profit " << money(r.realized_profit_usd) << ", predicted G " << money(r.predicted_g_usd) << "\n";
  if (!r.note.empty()) out << "note: " << r.note << "\n";
  return out.str();
}

std::string risk_report_to_json(const RiskReport& report) {
  json assets = json::array();
  for (const AssetRisk& a : report.assets) {
    json cdf = json::array();
    for (const CdfPoint& p : a.cdf) cdf.push_back({p.x, p.cumulative});
    json entry = {{"asset", a.asset}, {"points", a.points}, {"cdf", cdf}};
    entry["market_cap_usd"] = a.market_cap_usd ? json(*a.market_cap_usd) : json(nullptr);
    entry["tz"] = a.tz ? json(*a.tz) : json(nullptr);
    entry["exceedance_count"] = a.exceedance_count ? json(*a.exceedance_count) : json(nullptr);
    entry["exceedance_probability"] = a.exceedance_probability ? json(*a.exceedance_probability) : json(nullptr);
    assets.push_back(std::move(entry));
  }
  json out = {{"epsilon", report.epsilon}, {"z", report.z}, {"window", report.window}, {"assets", assets}};
  return out.dump(2);
}

RiskReport risk_report_from_json(std::string_view text) {
  return parse_or_throw(text, "risk report", [](const json& j) {
    RiskReport r;
    r.epsilon = j.at("epsilon").get<double>();
    r.z = j.at("z").get<double>();
    r.window = j.at("window").get<std::size_t>();
    for (const json& e : j.at("assets")) {
      AssetRisk a;
      a.asset = e.at("asset").get<std::string>();
      a.points = e.at("points").get<std::size_t>();
      if (!e.at("market_cap_usd").is_null()) a.market_cap_usd = e.at("market_cap_usd").get<double>();
      if (!e.at("tz").is_null()) a.tz = e.at("tz").get<std::size_t>();
      if (!e.at("exceedance_count").is_null()) a.exceedance_count = e.at("exceedance_count").get<std::size_t>();
      if (!e.at("exceedance_probability").is_null()) {
        a.exceedance_probability = e.at("exceedance_probability").get<double>();
      }
      for (const json& p : e.at("cdf")) a.cdf.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      r.assets.push_back(std::move(a));
    }
    return r;
  });
}

std::string risk_table_csv(const RiskReport& report) {
  std::ostringstream out;
  out << "asset,points,market_cap_usd,tz,exceedance_count,exceedance_probability\n";
  for (const AssetRisk& a : report.assets) {
    out << a.asset << ',' << a.points << ',';
    if (a.market_cap_usd) out << fmt_double(*a.market_cap_usd);
    out << ',';
    if (a.tz) out << *a.tz;
    out << ',';
    if (a.exceedance_count) out << *a.exceedance_count;
    out << ',';
    if (a.exceedance_probability) out << fmt_double(*a.exceedance_probability);
    out << '\n';
  }
  return out.str();
}

std::vector<AssetRisk> parse_risk_table_csv(std::string_view text) {
  std::vector<AssetRisk> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "asset,points,market_cap_usd,tz,exceedance_count,exceedance_probability") {
        throw Error(Errc::ParseError, "risk table: unexpected header");
      }
      continue;
    }
    std::vector<std::string_view> cells;
    std::string_view rest = line;
    for (std::size_t comma; (comma = rest.find(',')) != std::string_view::npos;) {
      cells.push_back(rest.substr(0, comma));
      rest.remove_prefix(comma + 1);
    }
    cells.push_back(rest);
    if (cells.size() != 6 || cells[0].empty()) {
      throw Error(Errc::ParseError, "risk table line " + std::to_string(line_no) + ": expected 6 columns");
    }
    try {
      AssetRisk a;
      a.asset = std::string(cells[0]);
      a.points = parse_field<std::size_t>(cells[1]).value_or(0);
      a.market_cap_usd = parse_field<double>(cells[2]);
      a.tz = parse_field<std::size_t>(cells[3]);
      a.exceedance_count = parse_field<std::size_t>(cells[4]);
      a.exceedance_probability = parse_field<double>(cells[5]);
      rows.push_back(std::move(a));
    } catch (const Error& e) {
      throw Error(Errc::ParseError, "risk table line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

std::string cdf_csv(const RiskReport& report) {
  std::ostringstream out;
  out << "asset,x,cumulative\n";
  for (const AssetRisk& a : report.assets) {
    for (const CdfPoint& p : a.cdf) out << a.asset << ',' << fmt_double(p.x) << ',' << fmt_double(p.cumulative) << '\n';
  }
  return out.str();
}

std::string tz_plot_data(const RiskReport& report) {
  std::ostringstream out;
  out << "# market_cap_usd tz asset\n";
  for (const AssetRisk& a : report.assets) {
    if (a.market_cap_usd && a.tz) out << fmt_double(*a.market_cap_usd) << ' ' << *a.tz << ' ' << a.asset << '\n';
  }
  return out.str();
}

std::string cdf_plot_data(const RiskReport& report) {
  std::ostringstream out;
  bool first = true;
  for (const AssetRisk& a : report.assets) {
    if (a.cdf.empty()) continue;
    if (!first) out << "\n\n";
    first = false;
    out << "# " << a.asset << "\n";
    for (const CdfPoint& p : a.cdf) out << fmt_double(p.x) << ' ' << fmt_double(p.cumulative) << '\n';
  }
  return out.str();
}

}  // namespace secplf
