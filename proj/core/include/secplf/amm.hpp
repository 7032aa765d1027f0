#pragma once

#include "secplf/types.hpp"

namespace secplf {

/// Constant-product pool. With the default fee multiplier of 1 the product
/// reserve_x * reserve_y is preserved exactly by every swap; a multiplier
/// gamma in (0, 1) credits only gamma * amount_in toward the curve, so the
/// product grows by the retained fee.
struct Pool {
  AssetId asset_x;
  AssetId asset_y;
  Amount reserve_x;
  Amount reserve_y;
  Rational fee_multiplier{1};

  PairId pair() const { return PairId(asset_x, asset_y); }
  bool contains(const AssetId& asset) const { return asset == asset_x || asset == asset_y; }
  const Amount& reserve_of(const AssetId& asset) const;
  /// The conservation constant k = reserve_x * reserve_y.
  Rational invariant() const { return reserve_x.value() * reserve_y.value(); }

  friend bool operator==(const Pool&, const Pool&) = default;
};

/// Validates distinct assets, strictly positive reserves and a fee
/// multiplier in (0, 1].
Pool make_pool(AssetId x, Amount reserve_x, AssetId y, Amount reserve_y, Rational fee_multiplier = 1);

struct SwapResult {
  Pool pool;
  Amount amount_out;
};

/// amount_out = r_out - k / (r_in + gamma * amount_in).
/// Errors: ZeroAmount, UnknownAsset, DrainedPool.
SwapResult swap_exact_in(const Pool& pool, const AssetId& asset_in, const Amount& amount_in);

/// Price of `priced` denominated in `numeraire`: reserve_numeraire / reserve_priced.
Rational spot_price(const Pool& pool, const AssetId& priced, const AssetId& numeraire);

/// USD oracle price of `priced`: spot_price * numeraire USD price.
Amount oracle_usd(const Pool& pool, const AssetId& priced, const AssetId& numeraire,
                  const Amount& numeraire_price_usd);

/// Same, with the pool's other asset as numeraire.
Amount oracle_usd(const Pool& pool, const AssetId& priced, const Amount& numeraire_price_usd);

}  // namespace secplf
