#include "secplf/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace secplf {

using nlohmann::json;

namespace {

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t index) { return path + "[" + std::to_string(index) + "]"; }

class Reader {
 public:
  const json& object(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    for (const auto& [key, _] : j.items()) {
      bool known = false;
      for (auto a : allowed) known = known || key == a;
      if (!known) throw ConfigError(at(path, key), "unknown field");
    }
    return j;
  }

  const json& field(const json& obj, const std::string& path, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(at(path, key), "required field is missing");
    return *it;
  }

  std::string string(const json& j, const std::string& path) {
    if (!j.is_string() || j.get_ref<const std::string&>().empty()) {
      throw ConfigError(path, "expected a non-empty string");
    }
    return j.get<std::string>();
  }

  Rational rational(const json& j, const std::string& path) {
    std::string text;
    if (j.is_string()) {
      text = j.get<std::string>();
    } else if (j.is_number()) {
      text = j.dump();
    } else {
      throw ConfigError(path, "expected a number or a numeric string");
    }
    try {
      return parse_rational(text);
    } catch (const Error& e) {
      throw ConfigError(path, e.what());
    }
  }

  Amount amount(const json& j, const std::string& path) {
    Rational v = rational(j, path);
    if (v < 0) throw ConfigError(path, "must not be negative");
    return Amount(v);
  }

  Amount positive(const json& j, const std::string& path) {
    Amount v = amount(j, path);
    if (v.is_zero()) throw ConfigError(path, "must be positive");
    return v;
  }

  AssetId asset(const json& j, const std::string& path) {
    AssetId id(string(j, path));
    if (!assets.contains(id)) throw ConfigError(path, "undeclared asset '" + id.str() + "'");
    return id;
  }

  AccountId account(const json& j, const std::string& path) {
    AccountId id(string(j, path));
    if (!accounts.contains(id)) throw ConfigError(path, "undeclared account '" + id.str() + "'");
    return id;
  }

  PairId pool(const json& j, const std::string& path, const WorldState& state) {
    PairId pair;
    try {
      pair = PairId::parse(string(j, path));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(path, e.what());
    }
    if (!state.pools.contains(pair)) throw ConfigError(path, "undeclared pool '" + pair.str() + "'");
    return pair;
  }

  std::set<AssetId> assets;
  std::set<AccountId> accounts;
};

std::map<AssetId, Amount> asset_amounts(Reader& r, const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object of asset amounts");
  std::map<AssetId, Amount> out;
  for (const auto& [key, value] : j.items()) {
    std::string p = at(path, key);
    out[r.asset(json(key), p)] = r.amount(value, p);
  }
  return out;
}

Step parse_step(Reader& r, const json& j, const std::string& path, const WorldState& state) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  std::string op = r.string(r.field(j, path, "op"), at(path, "op"));
  auto amount_spec = [&](const json& obj, std::initializer_list<std::pair<std::string_view, AmountSpec>> keywords,
                         std::optional<AmountSpec> fallback = std::nullopt) -> AmountSpec {
    std::string p = at(path, "amount");
    auto it = obj.find("amount");
    if (it == obj.end()) {
      if (fallback) return *fallback;
      throw ConfigError(p, "required field is missing");
    }
    if (it->is_string()) {
      for (const auto& [word, spec] : keywords) {
        if (it->get<std::string>() == word) return spec;
      }
    }
    return r.positive(*it, p);
  };
  auto acct = [&](const char* key = "account") { return r.account(r.field(j, path, key), at(path, key)); };
  auto asset = [&](const char* key = "asset") { return r.asset(r.field(j, path, key), at(path, key)); };

  if (op == "flash_borrow") {
    r.object(j, path, {"op", "account", "asset", "amount"});
    return FlashBorrowStep{acct(), asset(), r.positive(r.field(j, path, "amount"), at(path, "amount"))};
  }
  if (op == "swap") {
    r.object(j, path, {"op", "account", "pool", "asset_in", "amount"});
    PairId pool = r.pool(r.field(j, path, "pool"), at(path, "pool"), state);
    AssetId in = asset("asset_in");
    if (!pool.contains(in)) throw ConfigError(at(path, "asset_in"), "pool " + pool.str() + " does not trade it");
    return SwapStep{acct(), pool, in, amount_spec(j, {{"all", EntireBalance{}}})};
  }
  if (op == "deposit") {
    r.object(j, path, {"op", "account", "asset", "amount"});
    return DepositStep{acct(), asset(), amount_spec(j, {{"all", EntireBalance{}}})};
  }
  if (op == "borrow") {
    r.object(j, path, {"op", "account", "asset", "amount"});
    return BorrowStep{acct(), asset(), amount_spec(j, {{"max", MaxBorrowable{}}})};
  }
  if (op == "flash_repay") {
    r.object(j, path, {"op", "account", "asset", "amount"});
    return FlashRepayStep{acct(), asset(), amount_spec(j, {{"due", OutstandingLoan{}}}, OutstandingLoan{})};
  }
  if (op == "venue_buy") {
    r.object(j, path, {"op", "account", "venue", "asset_in", "asset_out", "amount"});
    std::string venue = r.string(r.field(j, path, "venue"), at(path, "venue"));
    if (!state.venues.contains(venue)) throw ConfigError(at(path, "venue"), "undeclared venue '" + venue + "'");
    return VenueBuyStep{acct(), venue, asset("asset_in"), asset("asset_out"),
                        amount_spec(j, {{"shortfall", FlashShortfall{}}})};
  }
  if (op == "transfer") {
    r.object(j, path, {"op", "from", "to", "asset", "amount"});
    return TransferStep{acct("from"), acct("to"), asset(), r.positive(r.field(j, path, "amount"), at(path, "amount"))};
  }
  if (op == "liquidate") {
    r.object(j, path, {"op", "account"});
    return LiquidateStep{acct()};
  }
  throw ConfigError(at(path, "op"), "unknown operation '" + op + "'");
}

const AccountId& step_account(const Step& step) {
  return std::visit(
      [](const auto& s) -> const AccountId& {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FlashBorrowStep> || std::is_same_v<T, FlashRepayStep>) return s.borrower;
        else if constexpr (std::is_same_v<T, SwapStep> || std::is_same_v<T, VenueBuyStep>) return s.trader;
        else if constexpr (std::is_same_v<T, TransferStep>) return s.from;
        else return s.owner;
      },
      step);
}

json amount_json(const Amount& a) { return to_string(a.value()); }

json amounts_json(const std::map<AssetId, Amount>& m) {
  json out = json::object();
  for (const auto& [asset, amount] : m) out[asset.str()] = amount_json(amount);
  return out;
}

json spec_json(const AmountSpec& spec) {
  if (const auto* a = std::get_if<Amount>(&spec)) return amount_json(*a);
  return to_string(spec);
}

json step_json(const Step& step) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FlashBorrowStep>) {
          return {{"op", "flash_borrow"}, {"account", s.borrower.str()}, {"asset", s.asset.str()},
                  {"amount", amount_json(s.amount)}};
        } else if constexpr (std::is_same_v<T, SwapStep>) {
          return {{"op", "swap"}, {"account", s.trader.str()}, {"pool", s.pool.str()},
                  {"asset_in", s.asset_in.str()}, {"amount", spec_json(s.amount_in)}};
        } else if constexpr (std::is_same_v<T, DepositStep>) {
          return {{"op", "deposit"}, {"account", s.owner.str()}, {"asset", s.asset.str()},
                  {"amount", spec_json(s.amount)}};
        } else if constexpr (std::is_same_v<T, BorrowStep>) {
          return {{"op", "borrow"}, {"account", s.owner.str()}, {"asset", s.asset.str()},
                  {"amount", spec_json(s.amount)}};
        } else if constexpr (std::is_same_v<T, FlashRepayStep>) {
          return {{"op", "flash_repay"}, {"account", s.borrower.str()}, {"asset", s.asset.str()},
                  {"amount", spec_json(s.amount)}};
        } else if constexpr (std::is_same_v<T, VenueBuyStep>) {
          return {{"op", "venue_buy"}, {"account", s.trader.str()}, {"venue", s.venue},
                  {"asset_in", s.asset_in.str()}, {"asset_out", s.asset_out.str()},
                  {"amount", spec_json(s.amount_out)}};
        } else if constexpr (std::is_same_v<T, TransferStep>) {
          return {{"op", "transfer"}, {"from", s.from.str()}, {"to", s.to.str()}, {"asset", s.asset.str()},
                  {"amount", amount_json(s.amount)}};
        } else {
          return {{"op", "liquidate"}, {"account", s.owner.str()}};
        }
      },
      step);
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  Reader r;
  r.object(root, "", {"name", "assets", "pools", "accounts", "venues", "plf", "flash_loan", "attack", "steps",
                      "seed"});

  Scenario sc;
  WorldState& st = sc.state;
  if (auto it = root.find("name"); it != root.end()) sc.name = r.string(*it, "name");
  if (auto it = root.find("seed"); it != root.end()) {
    if (!it->is_number_unsigned()) throw ConfigError("seed", "expected a non-negative integer");
    sc.seed = it->get<std::uint64_t>();
  }

  // Assets are declared first so every later reference can be checked.
  const json& assets = r.field(root, "", "assets");
  if (!assets.is_object() || assets.empty()) throw ConfigError("assets", "expected a non-empty object");
  for (const auto& [name, _] : assets.items()) r.assets.insert(AssetId(name));

  const json* pools = root.contains("pools") ? &root["pools"] : nullptr;
  if (pools != nullptr) {
    if (!pools->is_array()) throw ConfigError("pools", "expected an array");
    for (std::size_t i = 0; i < pools->size(); ++i) {
      std::string p = at("pools", i);
      const json& pj = r.object((*pools)[i], p, {"assets", "reserves", "fee_multiplier"});
      const json& names = r.field(pj, p, "assets");
      const json& reserves = r.field(pj, p, "reserves");
      if (!names.is_array() || names.size() != 2) throw ConfigError(at(p, "assets"), "expected two assets");
      if (!reserves.is_array() || reserves.size() != 2) throw ConfigError(at(p, "reserves"), "expected two reserves");
      AssetId x = r.asset(names[0], at(p, "assets") + "[0]");
      AssetId y = r.asset(names[1], at(p, "assets") + "[1]");
      Amount rx = r.positive(reserves[0], at(p, "reserves") + "[0]");
      Amount ry = r.positive(reserves[1], at(p, "reserves") + "[1]");
      Rational fee = pj.contains("fee_multiplier") ? r.rational(pj["fee_multiplier"], at(p, "fee_multiplier"))
                                                   : Rational(1);
      Pool pool;
      try {
        pool = make_pool(x, rx, y, ry, fee);
      } catch (const Error& e) {
        throw ConfigError(p, e.what());
      }
      if (!st.pools.emplace(pool.pair(), pool).second) throw ConfigError(p, "duplicate pool " + pool.pair().str());
    }
  }

  for (const auto& [name, aj] : assets.items()) {
    std::string p = at("assets", name);
    r.object(aj, p, {"price_usd", "oracle"});
    AssetId id(name);
    Amount price = r.positive(r.field(aj, p, "price_usd"), at(p, "price_usd"));
    sc.reference_prices[id] = price;
    if (auto it = aj.find("oracle"); it != aj.end()) {
      std::string op = at(p, "oracle");
      r.object(*it, op, {"pool", "numeraire"});
      PairId pair = r.pool(r.field(*it, op, "pool"), at(op, "pool"), st);
      AssetId numeraire = r.asset(r.field(*it, op, "numeraire"), at(op, "numeraire"));
      if (!pair.contains(id) || !pair.contains(numeraire) || numeraire == id) {
        throw ConfigError(op, "pool " + pair.str() + " must pair " + name + " with its numeraire");
      }
      st.oracles[id] = DexPriceSource{pair, numeraire};
    } else {
      st.oracles[id] = FixedPriceSource{price};
    }
  }

  if (auto it = root.find("accounts"); it != root.end()) {
    if (!it->is_object()) throw ConfigError("accounts", "expected an object");
    for (const auto& [name, _] : it->items()) r.accounts.insert(AccountId(name));
    for (const auto& [name, holdings] : it->items()) {
      for (auto& [asset, amount] : asset_amounts(r, holdings, at("accounts", name))) {
        st.balances[{AccountId(name), asset}] = amount;
      }
    }
  }

  if (auto it = root.find("venues"); it != root.end()) {
    if (!it->is_object()) throw ConfigError("venues", "expected an object");
    for (const auto& [name, vj] : it->items()) {
      std::string p = at("venues", name);
      r.object(vj, p, {"account", "prices"});
      FixedRateVenue venue{r.account(r.field(vj, p, "account"), at(p, "account")), sc.reference_prices};
      if (auto pr = vj.find("prices"); pr != vj.end()) {
        venue.usd_prices = asset_amounts(r, *pr, at(p, "prices"));
        for (const auto& [asset, price] : venue.usd_prices) {
          if (price.is_zero()) throw ConfigError(at(at(p, "prices"), asset.str()), "must be positive");
        }
      }
      st.venues.emplace(name, std::move(venue));
    }
  }

  if (auto it = root.find("plf"); it != root.end()) {
    const json& pj = r.object(*it, "plf", {"epsilon", "price_mode", "guard_epsilon", "liquidity"});
    PlfParams& params = st.plf.params;
    if (pj.contains("epsilon")) params.epsilon = r.rational(pj["epsilon"], "plf.epsilon");
    if (params.epsilon <= 1) throw ConfigError("plf.epsilon", "must be greater than 1");
    if (pj.contains("price_mode")) {
      std::string mode = r.string(pj["price_mode"], "plf.price_mode");
      if (mode == "raw") params.price_mode = PriceMode::RawOracle;
      else if (mode == "guarded") params.price_mode = PriceMode::SecPlfGuard;
      else throw ConfigError("plf.price_mode", "expected 'raw' or 'guarded'");
    }
    if (pj.contains("guard_epsilon")) {
      params.guard_epsilon = r.rational(pj["guard_epsilon"], "plf.guard_epsilon");
      if (*params.guard_epsilon <= 1) throw ConfigError("plf.guard_epsilon", "must be greater than 1");
    }
    if (pj.contains("liquidity")) st.plf.liquidity = asset_amounts(r, pj["liquidity"], "plf.liquidity");
  }

  if (auto it = root.find("flash_loan"); it != root.end()) {
    const json& fj = r.object(*it, "flash_loan", {"fee_rate", "reserves"});
    if (fj.contains("fee_rate")) {
      st.flash.fee_rate = r.rational(fj["fee_rate"], "flash_loan.fee_rate");
      if (st.flash.fee_rate < 0) throw ConfigError("flash_loan.fee_rate", "must not be negative");
    }
    if (fj.contains("reserves")) st.flash.reserves = asset_amounts(r, fj["reserves"], "flash_loan.reserves");
  }

  for (const auto& [asset, _] : st.oracles) {
    try {
      st.guards[asset] = init_state(raw_oracle_usd(st, asset), st.current_block);
    } catch (const Error& e) {
      throw ConfigError(at("assets", asset.str()), e.what());
    }
  }

  if (auto it = root.find("attack"); it != root.end()) {
    const std::string p = "attack";
    const json& aj = r.object(*it, p, {"adversary", "flash_asset", "deposit_asset", "borrow_asset", "flash_amount",
                                       "collateral_swap_in", "pool", "venue"});
    AttackPlan plan;
    plan.adversary = r.account(r.field(aj, p, "adversary"), at(p, "adversary"));
    plan.flash_asset = r.asset(r.field(aj, p, "flash_asset"), at(p, "flash_asset"));
    plan.deposit_asset = r.asset(r.field(aj, p, "deposit_asset"), at(p, "deposit_asset"));
    plan.borrow_asset = r.asset(r.field(aj, p, "borrow_asset"), at(p, "borrow_asset"));
    plan.flash_amount = r.amount(r.field(aj, p, "flash_amount"), at(p, "flash_amount"));
    plan.collateral_swap_in = r.amount(r.field(aj, p, "collateral_swap_in"), at(p, "collateral_swap_in"));
    plan.target_pool = r.pool(r.field(aj, p, "pool"), at(p, "pool"), st);
    plan.venue = r.string(r.field(aj, p, "venue"), at(p, "venue"));
    if (!st.venues.contains(plan.venue)) throw ConfigError(at(p, "venue"), "undeclared venue '" + plan.venue + "'");
    try {
      build_attack(plan, st.current_block);
    } catch (const Error& e) {
      throw ConfigError(p, e.what());
    }
    sc.attack = std::move(plan);
  }

  if (auto it = root.find("steps"); it != root.end()) {
    if (!it->is_array() || it->empty()) throw ConfigError("steps", "expected a non-empty array");
    Transaction tx;
    for (std::size_t i = 0; i < it->size(); ++i) tx.steps.push_back(parse_step(r, (*it)[i], at("steps", i), st));
    tx.sender = step_account(tx.steps.front());
    sc.transaction = std::move(tx);
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), "cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string scenario_to_json(const Scenario& sc) {
  const WorldState& st = sc.state;
  json root = json::object();
  if (!sc.name.empty()) root["name"] = sc.name;

  json assets = json::object();
  for (const auto& [asset, price] : sc.reference_prices) {
    json a = {{"price_usd", amount_json(price)}};
    auto source = st.oracles.find(asset);
    if (source != st.oracles.end()) {
      if (const auto* dex = std::get_if<DexPriceSource>(&source->second)) {
        a["oracle"] = {{"pool", dex->pool.str()}, {"numeraire", dex->numeraire.str()}};
      }
    }
    assets[asset.str()] = std::move(a);
  }
  root["assets"] = std::move(assets);

  json pools = json::array();
  for (const auto& [_, pool] : st.pools) {
    json pj = {{"assets", {pool.asset_x.str(), pool.asset_y.str()}},
               {"reserves", {amount_json(pool.reserve_x), amount_json(pool.reserve_y)}}};
    if (pool.fee_multiplier != 1) pj["fee_multiplier"] = to_string(pool.fee_multiplier);
    pools.push_back(std::move(pj));
  }
  root["pools"] = std::move(pools);

  json accounts = json::object();
  for (const auto& [key, amount] : st.balances) accounts[key.first.str()][key.second.str()] = amount_json(amount);
  for (const auto& [_, venue] : st.venues) {
    if (!accounts.contains(venue.account.str())) accounts[venue.account.str()] = json::object();
  }
  if (sc.attack && !accounts.contains(sc.attack->adversary.str())) {
    accounts[sc.attack->adversary.str()] = json::object();
  }
  root["accounts"] = std::move(accounts);

  if (!st.venues.empty()) {
    json venues = json::object();
    for (const auto& [name, venue] : st.venues) {
      venues[name] = {{"account", venue.account.str()}, {"prices", amounts_json(venue.usd_prices)}};
    }
    root["venues"] = std::move(venues);
  }

  json plf = {{"epsilon", to_string(st.plf.params.epsilon)},
              {"price_mode", st.plf.params.price_mode == PriceMode::SecPlfGuard ? "guarded" : "raw"},
              {"liquidity", amounts_json(st.plf.liquidity)}};
  if (st.plf.params.guard_epsilon) plf["guard_epsilon"] = to_string(*st.plf.params.guard_epsilon);
  root["plf"] = std::move(plf);
  root["flash_loan"] = {{"fee_rate", to_string(st.flash.fee_rate)}, {"reserves", amounts_json(st.flash.reserves)}};

  if (sc.attack) {
    const AttackPlan& a = *sc.attack;
    root["attack"] = {{"adversary", a.adversary.str()},
                      {"flash_asset", a.flash_asset.str()},
                      {"deposit_asset", a.deposit_asset.str()},
                      {"borrow_asset", a.borrow_asset.str()},
                      {"flash_amount", amount_json(a.flash_amount)},
                      {"collateral_swap_in", amount_json(a.collateral_swap_in)},
                      {"pool", a.target_pool.str()},
                      {"venue", a.venue}};
  }
  if (sc.transaction) {
    json steps = json::array();
    for (const Step& s : sc.transaction->steps) steps.push_back(step_json(s));
    root["steps"] = std::move(steps);
  }
  root["seed"] = sc.seed;
  return root.dump(2);
}

void set_price_mode(Scenario& scenario, PriceMode mode) { scenario.state.plf.params.price_mode = mode; }

}  // namespace secplf
