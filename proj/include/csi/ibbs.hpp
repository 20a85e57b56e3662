// Copyright 2026 The csi-ibbs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "csi/action.hpp"
#include "csi/codec.hpp"
#include "csi/hash.hpp"
#include "csi/rng.hpp"

namespace csi {

/// `paper`: commitment base (E_delta)^u_delta, witness x_delta, ternary
/// challenges. `otter`: base E0, witness r_delta, sign challenges.
enum class IbbsMode : std::uint8_t { paper = 0, otter = 1 };

const char* ibbs_mode_name(IbbsMode mode) noexcept;

/// 4 * 2^n in paper mode (saturating), 1 in otter mode.
std::uint32_t default_retry_limit(IbbsMode mode, std::size_t n) noexcept;

struct IbbsParams {
  ActionPtr ga;
  ExceptionalSet set;
  SetPolicy policy = SetPolicy::super;
  CurveVec E0, E1;
  IbbsMode mode = IbbsMode::otter;
  std::uint32_t retry_limit = 1;

  std::size_t n() const noexcept { return E0.size(); }
  const CurveVec& E(int b) const { return b == 0 ? E0 : E1; }
  WireContext wire() const { return wire_context(*ga, n()); }
};

struct IbbsMasterSecret {
  std::uint64_t s0 = 0, s1 = 0;

  std::uint64_t s(int b) const { return b == 0 ? s0 : s1; }
  friend bool operator==(const IbbsMasterSecret&, const IbbsMasterSecret&) = default;
};

struct IbbsSetupOptions {
  IbbsMode mode = IbbsMode::otter;
  SetPolicy policy = SetPolicy::super;
  std::uint32_t retry_limit = 0;  // 0 selects default_retry_limit
  bool require_nonzero_s = true;
};

std::pair<IbbsParams, IbbsMasterSecret> ibbs_setup(ActionPtr ga, std::size_t n, Rng& rng,
                                                   const IbbsSetupOptions& options = {});
IbbsParams ibbs_setup_with(ActionPtr ga, ExceptionalSet set, SetPolicy policy, const IbbsMasterSecret& msk,
                           IbbsMode mode, std::uint32_t retry_limit = 0);

enum class WitnessKind : std::uint8_t { x = 0, r = 1 };

/// Per-identity public key (X_0, X_1).
struct UserPublicKey {
  CurveVec X0, X1;

  const CurveVec& X(int b) const { return b == 0 ? X0 : X1; }
  friend bool operator==(const UserPublicKey&, const UserPublicKey&) = default;
};

/// Exactly one witness: x_delta (paper mode) or r_delta (otter mode).
struct UserSecretKey {
  int delta = 0;
  WitnessKind kind = WitnessKind::r;
  ExponentVec witness;

  friend bool operator==(const UserSecretKey&, const UserSecretKey&) = default;
};

struct UserKeys {
  UserSecretKey usk;
  UserPublicKey upk;
};

/// Every Extract intermediate, for tests and accounting only.
struct ExtractTrace {
  ExponentVec r0, r1, x0, x1;
  SignVec u0, u1;
};

UserKeys ibbs_extract_with(const IbbsParams& params, const IbbsMasterSecret& msk, std::span<const std::uint8_t> id,
                           const ExponentVec& r0, const ExponentVec& r1, int delta, ExtractTrace* trace = nullptr);
UserKeys ibbs_extract(const IbbsParams& params, const IbbsMasterSecret& msk, std::span<const std::uint8_t> id,
                      Rng& rng);

/// u_b = H(id || X_b).
SignVec ibbs_identity_hash(const IbbsParams& params, std::span<const std::uint8_t> id, const CurveVec& X_b);

struct RhoS1 {
  CurveVec Y0, Y1;

  const CurveVec& Y(int b) const { return b == 0 ? Y0 : Y1; }
  friend bool operator==(const RhoS1&, const RhoS1&) = default;
};

struct RhoU {
  TernaryVec c_star;

  friend bool operator==(const RhoU&, const RhoU&) = default;
};

struct RhoS2 {
  TernaryVec c0, c1;
  ExponentVec r0, r1;

  friend bool operator==(const RhoS2&, const RhoS2&) = default;
};

struct Signature {
  TernaryVec c0, c1;
  ExponentVec r0, r1;

  const TernaryVec& c(int b) const { return b == 0 ? c0 : c1; }
  const ExponentVec& r(int b) const { return b == 0 ? r0 : r1; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

struct IndexRef {
  int side = 0;
  std::size_t index = 0;

  friend bool operator==(const IndexRef&, const IndexRef&) = default;
  friend auto operator<=>(const IndexRef&, const IndexRef&) = default;
};

struct U2Result {
  std::optional<Signature> signature;  // empty means reject
  std::vector<IndexRef> mismatches;    // (b, i) with recomputed Z~ != Z
  bool hash_ok = false;
};

struct SignerCoins {
  ExponentVec y;
  SignVec tilde_c_other;
  ExponentVec r_other;
};

/// One-shot signer state created by S1 and consumed by S2.
class SignerSession {
 public:
  bool used() const noexcept { return used_; }

 private:
  friend std::pair<RhoS1, SignerSession> ibbs_s1_with(const IbbsParams&, const UserSecretKey&,
                                                      const UserPublicKey&, std::span<const std::uint8_t>,
                                                      SignerCoins);
  friend RhoS2 ibbs_s2(SignerSession&, const IbbsParams&, const UserSecretKey&, const RhoU&);

  int delta_ = 0;
  ExponentVec y_;
  TernaryVec c_star_other_;
  ExponentVec r_star_other_;
  bool used_ = true;
};

std::pair<RhoS1, SignerSession> ibbs_s1_with(const IbbsParams& params, const UserSecretKey& usk,
                                             const UserPublicKey& upk, std::span<const std::uint8_t> id,
                                             SignerCoins coins);
std::pair<RhoS1, SignerSession> ibbs_s1(const IbbsParams& params, const UserSecretKey& usk,
                                        const UserPublicKey& upk, std::span<const std::uint8_t> id, Rng& rng);

/// c*_delta = c* (.) c*_{1-delta}; r*_delta = y - witness (.) c*_delta.
RhoS2 ibbs_s2(SignerSession& session, const IbbsParams& params, const UserSecretKey& usk, const RhoU& rho_u);

struct UserCoins {
  SignVec v0, v1;
  ExponentVec w0, w1;
};

/// One-shot user state created by U1 and consumed by U2.
class UserSession {
 public:
  bool used() const noexcept { return used_; }
  const SignVec& v(int b) const { return b == 0 ? coins_.v0 : coins_.v1; }
  const ExponentVec& w(int b) const { return b == 0 ? coins_.w0 : coins_.w1; }
  const CurveVec& Z(int b) const { return b == 0 ? Z0_ : Z1_; }
  const TernaryVec& c() const { return c_; }
  const Bytes& message() const { return m_; }

 private:
  friend std::pair<RhoU, UserSession> ibbs_u1_with(const IbbsParams&, const UserPublicKey&,
                                                   std::span<const std::uint8_t>, const RhoS1&,
                                                   std::span<const std::uint8_t>, UserCoins);
  friend U2Result ibbs_u2(UserSession&, const IbbsParams&, const UserPublicKey&,
                          std::span<const std::uint8_t>, const RhoS2&);

  UserCoins coins_;
  CurveVec Z0_, Z1_;
  TernaryVec c_, c_star_;
  Bytes m_;
  bool used_ = true;
};

/// Z_b = [g^w_b] * Y_b^v_b, c = hash(Z_0 || Z_1 || m), c* = c (.) v_0 (.) v_1.
std::pair<RhoU, UserSession> ibbs_u1_with(const IbbsParams& params, const UserPublicKey& upk,
                                          std::span<const std::uint8_t> id, const RhoS1& rho_s1,
                                          std::span<const std::uint8_t> m, UserCoins coins);
std::pair<RhoU, UserSession> ibbs_u1(const IbbsParams& params, const UserPublicKey& upk,
                                     std::span<const std::uint8_t> id, const RhoS1& rho_s1,
                                     std::span<const std::uint8_t> m, Rng& rng);

U2Result ibbs_u2(UserSession& session, const IbbsParams& params, const UserPublicKey& upk,
                 std::span<const std::uint8_t> id, const RhoS2& rho_s2);

/// The verification recompute rule. Empty when sigma is out of range for
/// the params (wrong alphabet in otter mode, exponent >= N, curve outside
/// the orbit).
std::optional<std::pair<CurveVec, CurveVec>> ibbs_recompute(const IbbsParams& params, const UserPublicKey& upk,
                                                            std::span<const std::uint8_t> id,
                                                            const Signature& sig);

/// Hash of Z_0 || Z_1 || m in the mode's challenge space.
TernaryVec ibbs_challenge_hash(const IbbsParams& params, const CurveVec& Z0, const CurveVec& Z1,
                               std::span<const std::uint8_t> m);

bool ibbs_verify(const IbbsParams& params, const UserPublicKey& upk, std::span<const std::uint8_t> id,
                 const Signature& sig, std::span<const std::uint8_t> m);

struct SignOutcome {
  Signature signature;
  std::uint32_t attempts = 0;
};

/// Fresh S1 -> U1 -> S2 -> U2 sessions until a signature is produced.
/// `limit` 0 selects params.retry_limit. Throws ErrorCode::retry_limit.
SignOutcome ibbs_sign_with_retry(const IbbsParams& params, const UserSecretKey& usk, const UserPublicKey& upk,
                                 std::span<const std::uint8_t> id, std::span<const std::uint8_t> m, Rng& rng,
                                 std::uint32_t limit = 0);

struct BlindingState {
  SignVec v0, v1;
  ExponentVec w0, w1;

  friend bool operator==(const BlindingState&, const BlindingState&) = default;
};

/// v_b = c~_b (.) c*_b, w_b = r~_b - r*_b (.) v_b. Throws
/// ErrorCode::invalid_argument at a zero challenge entry.
BlindingState reconstruct_blinding(const IbbsParams& params, const RhoS1& rho_s1, const RhoS2& rho_s2,
                                   const Signature& sig);

struct SizeRow {
  unsigned level = 0;  // 0 for custom rows
  unsigned p_bits = 0;
  std::size_t n = 0;
  unsigned n_bits = 0;  // the value used for ceil(log2 N)
  bool n_bits_from_p = true;
  std::uint64_t mpk = 0, msk = 0, usk = 0, upk = 0, sig = 0, id = 0;
};

/// Levels 80, 100, 128, 192, 256; unknown levels throw invalid_argument.
SizeRow size_report(unsigned level);
/// ceil(log2 N) defaults to p_bits, the evaluation convention of the table.
SizeRow size_report_custom(unsigned p_bits, std::size_t n, std::optional<unsigned> n_bits = std::nullopt);

struct OpCounts {
  std::uint64_t setup = 0, extract = 0, s1 = 0, u1 = 0, s2 = 0, u2 = 0, verify = 0;
};

/// Runs one instrumented Setup/Extract/S1/U1/S2/U2/Verify chain on a fresh
/// copy of the backend with vector length n.
OpCounts op_count_report(const GroupAction& backend, std::size_t n, IbbsMode mode, Rng& rng,
                         SetPolicy policy = SetPolicy::automatic);

}  // namespace csi
