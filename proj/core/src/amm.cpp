#include "secplf/amm.hpp"

namespace secplf {
namespace {

void require_member(const Pool& pool, const AssetId& asset) {
  if (!pool.contains(asset)) {
    throw Error(Errc::UnknownAsset, asset.str() + " is not traded in pool " + pool.pair().str());
  }
}

}  // namespace

const Amount& Pool::reserve_of(const AssetId& asset) const {
  if (asset == asset_x) return reserve_x;
  if (asset == asset_y) return reserve_y;
  throw Error(Errc::UnknownAsset, asset.str() + " is not traded in pool " + pair().str());
}

Pool make_pool(AssetId x, Amount reserve_x, AssetId y, Amount reserve_y, Rational fee_multiplier) {
  if (x == y) throw Error(Errc::InvalidParameter, "pool needs two distinct assets");
  if (reserve_x.is_zero() || reserve_y.is_zero()) {
    throw Error(Errc::InvalidParameter, "pool reserves must be strictly positive");
  }
  if (fee_multiplier <= 0 || fee_multiplier > 1) {
    throw Error(Errc::InvalidParameter, "fee multiplier must lie in (0, 1], got " + fee_multiplier.str());
  }
  return Pool{std::move(x), std::move(y), std::move(reserve_x), std::move(reserve_y), std::move(fee_multiplier)};
}

SwapResult swap_exact_in(const Pool& pool, const AssetId& asset_in, const Amount& amount_in) {
  require_member(pool, asset_in);
  if (amount_in.is_zero()) throw Error(Errc::ZeroAmount, "swap input must be positive");

  const bool x_in = asset_in == pool.asset_x;
  const Rational& r_in = x_in ? pool.reserve_x.value() : pool.reserve_y.value();
  const Rational& r_out = x_in ? pool.reserve_y.value() : pool.reserve_x.value();

  const Rational k = r_in * r_out;
  const Rational effective_in = amount_in.value() * pool.fee_multiplier;
  const Rational out = r_out - k / (r_in + effective_in);
  if (out <= 0 || out >= r_out) {
    throw Error(Errc::DrainedPool, "swap would leave pool " + pool.pair().str() + " without output reserve");
  }

  SwapResult result{pool, Amount(out)};
  Amount new_in(Rational(r_in + amount_in.value()));
  Amount new_out(Rational(r_out - out));
  if (x_in) {
    result.pool.reserve_x = std::move(new_in);
    result.pool.reserve_y = std::move(new_out);
  } else {
    result.pool.reserve_y = std::move(new_in);
    result.pool.reserve_x = std::move(new_out);
  }
  return result;
}

Rational spot_price(const Pool& pool, const AssetId& priced, const AssetId& numeraire) {
  require_member(pool, priced);
  require_member(pool, numeraire);
  if (priced == numeraire) return Rational(1);
  return pool.reserve_of(numeraire).value() / pool.reserve_of(priced).value();
}

Amount oracle_usd(const Pool& pool, const AssetId& priced, const AssetId& numeraire,
                  const Amount& numeraire_price_usd) {
  if (numeraire_price_usd.is_zero()) {
    throw Error(Errc::NonPositivePrice, "numeraire USD price must be positive");
  }
  return numeraire_price_usd * spot_price(pool, priced, numeraire);
}

Amount oracle_usd(const Pool& pool, const AssetId& priced, const Amount& numeraire_price_usd) {
  require_member(pool, priced);
  return oracle_usd(pool, priced, pool.pair().other(priced), numeraire_price_usd);
}

}  // namespace secplf
