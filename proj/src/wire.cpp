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

#include "csi/wire.hpp"

#include <algorithm>

namespace csi {

const char* msg_type_name(MsgType type) noexcept {
  switch (type) {
    case MsgType::params: return "PARAMS";
    case MsgType::upk: return "UPK";
    case MsgType::rho_s1: return "RHO_S1";
    case MsgType::rho_u: return "RHO_U";
    case MsgType::rho_s2: return "RHO_S2";
    case MsgType::sig: return "SIG";
    case MsgType::id_commit: return "ID_COMMIT";
    case MsgType::id_challenge: return "ID_CHALLENGE";
    case MsgType::id_response: return "ID_RESPONSE";
    case MsgType::error: return "ERROR";
    case MsgType::msk: return "MSK";
    case MsgType::usk: return "USK";
  }
  return "UNKNOWN";
}

bool is_known_msg_type(std::uint8_t type) noexcept { return type >= 0x01 && type <= 0x0C; }

Bytes encode_frame(const Frame& frame) {
  if (frame.payload.size() > kMaxPayloadBytes) fail(ErrorCode::invalid_argument, "frame payload too large");
  ByteWriter w;
  w.bytes(kFrameMagic);
  w.u8(kWireVersion);
  w.u8(static_cast<std::uint8_t>(frame.type));
  w.uint_be(frame.payload.size(), 4);
  w.bytes(frame.payload);
  return w.take();
}

std::pair<MsgType, std::uint32_t> decode_frame_header(std::span<const std::uint8_t> header) {
  if (header.size() < kFrameHeaderBytes) fail(ErrorCode::decode, "truncated frame header");
  if (!std::equal(std::begin(kFrameMagic), std::end(kFrameMagic), header.begin())) {
    fail(ErrorCode::decode, "bad frame magic");
  }
  if (header[4] != kWireVersion) fail(ErrorCode::decode, "unsupported frame version " + std::to_string(header[4]));
  if (!is_known_msg_type(header[5])) fail(ErrorCode::decode, "unknown message type " + std::to_string(header[5]));
  ByteReader r(header.subspan(6, 4));
  auto len = static_cast<std::uint32_t>(r.uint_be(4));
  if (len > kMaxPayloadBytes) fail(ErrorCode::decode, "frame payload length exceeds limit");
  return {static_cast<MsgType>(header[5]), len};
}

Frame decode_frame(std::span<const std::uint8_t> bytes) {
  auto [type, len] = decode_frame_header(bytes);
  if (bytes.size() - kFrameHeaderBytes < len) fail(ErrorCode::decode, "truncated frame payload");
  if (bytes.size() - kFrameHeaderBytes > len) fail(ErrorCode::decode, "frame length mismatch: trailing bytes");
  auto payload = bytes.subspan(kFrameHeaderBytes);
  return Frame{type, Bytes(payload.begin(), payload.end())};
}

namespace {

WireContext context_for(const ActionParams& a) {
  WireContext ctx;
  ctx.n = a.n;
  ctx.N = a.N;
  const unsigned exp_bits = ceil_log2(a.N);
  const std::uint64_t bound = a.kind == BackendKind::toy ? a.N : a.p;
  ctx.exp_bytes = (exp_bits + 7) / 8;
  ctx.curve_bytes = (ceil_log2(bound) + 7) / 8;
  ctx.curve_bound = bound;
  return ctx;
}

Bytes encode_params(const ParamsMsg& m) {
  const WireContext ctx = context_for(m.action);
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(m.scheme));
  w.u8(static_cast<std::uint8_t>(m.action.kind));
  w.u8(m.mode);
  w.u8(static_cast<std::uint8_t>(m.policy));
  w.u8(m.set.super ? 1 : 0);
  w.uint_be(m.action.p, 8);
  w.uint_be(m.action.N, 8);
  w.uint_be(m.action.n, 2);
  if (m.action.ells.size() > 255) fail(ErrorCode::invalid_argument, "too many small primes");
  w.u8(static_cast<std::uint8_t>(m.action.ells.size()));
  for (auto ell : m.action.ells) w.uint_be(ell, 2);
  w.blob16(as_bytes(m.action.generator));
  w.uint_be(m.retry_limit, 4);
  if (m.set.c.size() != m.action.n || m.E0.size() != m.action.n) {
    fail(ErrorCode::invalid_argument, "params: vector lengths disagree with n");
  }
  w.exponents(m.set.c, ctx);
  w.curves(m.E0, ctx);
  if (m.scheme == Scheme::ibbs) {
    if (m.E1.size() != m.action.n) fail(ErrorCode::invalid_argument, "params: E1 length");
    w.curves(m.E1, ctx);
  }
  return w.take();
}

ParamsMsg decode_params(std::span<const std::uint8_t> payload) {
  ByteReader r(payload);
  ParamsMsg m;
  auto scheme = r.u8();
  if (scheme > 1) fail(ErrorCode::decode, "params: unknown scheme");
  m.scheme = static_cast<Scheme>(scheme);
  auto kind = r.u8();
  if (kind > 1) fail(ErrorCode::decode, "params: unknown backend");
  m.action.kind = static_cast<BackendKind>(kind);
  m.mode = r.u8();
  if (m.mode > 1) fail(ErrorCode::decode, "params: unknown mode");
  auto policy = r.u8();
  if (policy > 2) fail(ErrorCode::decode, "params: unknown set policy");
  m.policy = static_cast<SetPolicy>(policy);
  auto super = r.u8();
  if (super > 1) fail(ErrorCode::decode, "params: bad super flag");
  m.set.super = super == 1;
  m.action.p = r.uint_be(8);
  m.action.N = r.uint_be(8);
  m.action.n = r.uint_be(2);
  if (m.action.N < 3 || m.action.N >= (std::uint64_t{1} << 62)) fail(ErrorCode::decode, "params: N out of range");
  if (m.action.n == 0) fail(ErrorCode::decode, "params: n must be positive");
  if (m.action.kind == BackendKind::csidh && (m.action.p < 3 || m.action.p >= (std::uint64_t{1} << 62))) {
    fail(ErrorCode::decode, "params: p out of range");
  }
  auto nells = r.u8();
  for (unsigned i = 0; i < nells; ++i) m.action.ells.push_back(r.uint_be(2));
  auto gen = r.blob16();
  m.action.generator.assign(gen.begin(), gen.end());
  m.retry_limit = static_cast<std::uint32_t>(r.uint_be(4));
  const WireContext ctx = context_for(m.action);
  m.set.c = r.exponents(m.action.n, ctx);
  m.E0 = r.curves(m.action.n, ctx);
  if (m.scheme == Scheme::ibbs) m.E1 = r.curves(m.action.n, ctx);
  r.expect_end("params");
  return m;
}

struct Encoder {
  const WireContext& ctx;
  ByteWriter w;

  void check_n(std::size_t got) const {
    if (got != ctx.n) fail(ErrorCode::invalid_argument, "message vector length differs from n");
  }

  void operator()(const ParamsMsg& m) { w.bytes(encode_params(m)); }
  void operator()(const UpkMsg& m) {
    check_n(m.upk.X0.size());
    check_n(m.upk.X1.size());
    w.blob16(m.id);
    w.curves(m.upk.X0, ctx);
    w.curves(m.upk.X1, ctx);
  }
  void operator()(const RhoS1& m) {
    check_n(m.Y0.size());
    check_n(m.Y1.size());
    w.curves(m.Y0, ctx);
    w.curves(m.Y1, ctx);
  }
  void operator()(const RhoU& m) {
    check_n(m.c_star.size());
    w.ternary(m.c_star);
  }
  void operator()(const RhoS2& m) {
    for (auto sz : {m.c0.size(), m.c1.size(), m.r0.size(), m.r1.size()}) check_n(sz);
    w.ternary(m.c0);
    w.ternary(m.c1);
    w.exponents(m.r0, ctx);
    w.exponents(m.r1, ctx);
  }
  void operator()(const Signature& m) {
    for (auto sz : {m.c0.size(), m.c1.size(), m.r0.size(), m.r1.size()}) check_n(sz);
    w.ternary(m.c0);
    w.ternary(m.c1);
    w.exponents(m.r0, ctx);
    w.exponents(m.r1, ctx);
  }
  void operator()(const IbidCommitment& m) {
    check_n(m.X.size());
    check_n(m.K.size());
    w.curves(m.X, ctx);
    w.curves(m.K, ctx);
  }
  void operator()(const IdChallengeMsg& m) {
    check_n(m.v.size());
    w.ternary(m.v);
  }
  void operator()(const IdResponseMsg& m) {
    check_n(m.z.size());
    w.exponents(m.z, ctx);
  }
  void operator()(const ErrorMsg& m) {
    w.u8(static_cast<std::uint8_t>(m.code));
    w.bytes(as_bytes(m.text));
  }
  void operator()(const MskMsg& m) {
    if (m.s.empty() || m.s.size() > 255) fail(ErrorCode::invalid_argument, "msk: bad secret count");
    w.u8(static_cast<std::uint8_t>(m.s.size()));
    w.exponents(ExponentVec(m.s), ctx);
  }
  void operator()(const UskMsg& m) {
    check_n(m.usk.witness.size());
    w.blob16(m.id);
    w.u8(static_cast<std::uint8_t>(m.usk.delta));
    w.u8(static_cast<std::uint8_t>(m.usk.kind));
    w.exponents(m.usk.witness, ctx);
  }
};

}  // namespace

MsgType message_type(const Message& msg) noexcept {
  static constexpr MsgType kTypes[] = {MsgType::params,       MsgType::upk,         MsgType::rho_s1,
                                       MsgType::rho_u,        MsgType::rho_s2,      MsgType::sig,
                                       MsgType::id_commit,    MsgType::id_challenge, MsgType::id_response,
                                       MsgType::error,        MsgType::msk,         MsgType::usk};
  return kTypes[msg.index()];
}

Frame encode_message(const Message& msg, const WireContext& ctx) {
  Encoder enc{ctx, {}};
  std::visit(enc, msg);
  return Frame{message_type(msg), enc.w.take()};
}

Message decode_message(const Frame& frame, const WireContext& ctx) {
  ByteReader r(frame.payload);
  const std::size_t n = ctx.n;
  Message out;
  switch (frame.type) {
    case MsgType::params: return decode_params(frame.payload);
    case MsgType::upk: {
      UpkMsg m;
      m.id = r.blob16();
      m.upk.X0 = r.curves(n, ctx);
      m.upk.X1 = r.curves(n, ctx);
      out = std::move(m);
      break;
    }
    case MsgType::rho_s1: {
      RhoS1 m;
      m.Y0 = r.curves(n, ctx);
      m.Y1 = r.curves(n, ctx);
      out = std::move(m);
      break;
    }
    case MsgType::rho_u: out = RhoU{r.ternary(n)}; break;
    case MsgType::rho_s2: {
      RhoS2 m;
      m.c0 = r.ternary(n);
      m.c1 = r.ternary(n);
      m.r0 = r.exponents(n, ctx);
      m.r1 = r.exponents(n, ctx);
      out = std::move(m);
      break;
    }
    case MsgType::sig: {
      Signature m;
      m.c0 = r.ternary(n);
      m.c1 = r.ternary(n);
      m.r0 = r.exponents(n, ctx);
      m.r1 = r.exponents(n, ctx);
      out = std::move(m);
      break;
    }
    case MsgType::id_commit: {
      IbidCommitment m;
      m.X = r.curves(n, ctx);
      m.K = r.curves(n, ctx);
      out = std::move(m);
      break;
    }
    case MsgType::id_challenge: out = IdChallengeMsg{r.ternary(n)}; break;
    case MsgType::id_response: out = IdResponseMsg{r.exponents(n, ctx)}; break;
    case MsgType::error: {
      ErrorMsg m;
      auto code = r.u8();
      if (code < 2 || code > 13) fail(ErrorCode::decode, "error frame: unknown error class");
      m.code = static_cast<ErrorCode>(code);
      auto rest = r.bytes(r.remaining());
      m.text.assign(rest.begin(), rest.end());
      out = std::move(m);
      break;
    }
    case MsgType::msk: {
      MskMsg m;
      auto count = r.u8();
      if (count == 0) fail(ErrorCode::decode, "msk: empty");
      m.s = r.exponents(count, ctx).raw();
      out = std::move(m);
      break;
    }
    case MsgType::usk: {
      UskMsg m;
      m.id = r.blob16();
      auto delta = r.u8();
      auto kind = r.u8();
      if (delta > 1) fail(ErrorCode::decode, "usk: delta must be 0 or 1");
      if (kind > 1) fail(ErrorCode::decode, "usk: unknown witness kind");
      m.usk.delta = delta;
      m.usk.kind = static_cast<WitnessKind>(kind);
      m.usk.witness = r.exponents(n, ctx);
      out = std::move(m);
      break;
    }
    default: fail(ErrorCode::decode, "unknown message type");
  }
  r.expect_end(msg_type_name(frame.type));
  return out;
}

ParamsMsg describe(const IbbsParams& params) {
  ParamsMsg m;
  m.scheme = Scheme::ibbs;
  m.action = params.ga->params();
  m.action.n = params.n();
  m.mode = static_cast<std::uint8_t>(params.mode);
  m.policy = params.policy;
  m.set = params.set;
  m.E0 = params.E0;
  m.E1 = params.E1;
  m.retry_limit = params.retry_limit;
  return m;
}

ParamsMsg describe(const IbidParams& params) {
  ParamsMsg m;
  m.scheme = Scheme::ibid;
  m.action = params.ga->params();
  m.action.n = params.n();
  m.mode = static_cast<std::uint8_t>(params.mode);
  m.policy = params.policy;
  m.set = params.set;
  m.E0 = params.E;
  return m;
}

namespace {

ActionPtr rebuild_checked(const ParamsMsg& msg) {
  if (msg.action.N % 2 == 0) fail(ErrorCode::invalid_argument, "params: N must be odd");
  ActionPtr ga = GroupAction::make(msg.action);
  const std::size_t n = msg.action.n;
  if (msg.set.c.size() != n) fail(ErrorCode::invalid_argument, "params: set length");
  bool ok = false;
  switch (msg.policy) {
    case SetPolicy::super: ok = msg.set.super && check_exceptional_set(msg.set.c, msg.action.N, true); break;
    case SetPolicy::plain: ok = !msg.set.super && check_exceptional_set(msg.set.c, msg.action.N, false); break;
    case SetPolicy::unchecked: ok = msg.set == canonical_set_unchecked(n, msg.action.N); break;
    case SetPolicy::automatic: ok = false; break;
  }
  if (!ok) fail(ErrorCode::invalid_argument, "params: set does not satisfy its recorded policy");
  for (const auto* E : {&msg.E0, &msg.E1}) {
    for (auto c : *E) {
      if (!ga->in_orbit(c)) fail(ErrorCode::not_in_orbit, "params: master curve not in the orbit of E0");
    }
  }
  return ga;
}

}  // namespace

IbbsParams to_ibbs_params(const ParamsMsg& msg) {
  if (msg.scheme != Scheme::ibbs) fail(ErrorCode::invalid_argument, "params: not an IBBS parameter file");
  IbbsParams p;
  p.ga = rebuild_checked(msg);
  if (msg.E0.size() != msg.action.n || msg.E1.size() != msg.action.n) {
    fail(ErrorCode::invalid_argument, "params: master curve length");
  }
  p.set = msg.set;
  p.policy = msg.policy;
  p.E0 = msg.E0;
  p.E1 = msg.E1;
  p.mode = static_cast<IbbsMode>(msg.mode);
  p.retry_limit = msg.retry_limit == 0 ? default_retry_limit(p.mode, msg.action.n) : msg.retry_limit;
  return p;
}

IbidParams to_ibid_params(const ParamsMsg& msg) {
  if (msg.scheme != Scheme::ibid) fail(ErrorCode::invalid_argument, "params: not an IBID parameter file");
  IbidParams p;
  p.ga = rebuild_checked(msg);
  if (msg.E0.size() != msg.action.n || !msg.E1.empty()) fail(ErrorCode::invalid_argument, "params: curve length");
  p.set = msg.set;
  p.policy = msg.policy;
  p.E = msg.E0;
  p.mode = static_cast<IbidMode>(msg.mode);
  return p;
}

Bytes encode_signature_file(const Signature& sig, IbbsMode mode, const WireContext& ctx) {
  if (ctx.n > 0xFFFF) fail(ErrorCode::invalid_argument, "signature: n too large");
  Frame body = encode_message(sig, ctx);
  ByteWriter w;
  w.bytes(kSigMagic);
  w.u8(kWireVersion);
  w.u8(static_cast<std::uint8_t>(mode));
  w.uint_be(ctx.n, 2);
  w.bytes(body.payload);
  return w.take();
}

Signature decode_signature_file(std::span<const std::uint8_t> bytes, IbbsMode mode, const WireContext& ctx) {
  ByteReader r(bytes);
  auto magic = r.bytes(4);
  if (!std::equal(magic.begin(), magic.end(), std::begin(kSigMagic))) fail(ErrorCode::decode, "bad signature magic");
  if (r.u8() != kWireVersion) fail(ErrorCode::decode, "unsupported signature version");
  auto m = r.u8();
  if (m > 1) fail(ErrorCode::decode, "signature: unknown mode");
  if (static_cast<IbbsMode>(m) != mode) fail(ErrorCode::decode, "signature mode does not match the parameters");
  if (r.uint_be(2) != ctx.n) fail(ErrorCode::decode, "signature length does not match the parameters");
  auto payload = r.bytes(r.remaining());
  Frame f{MsgType::sig, Bytes(payload.begin(), payload.end())};
  return decode_as<Signature>(f, ctx);
}

std::size_t signature_payload_bits(const WireContext& ctx) {
  return 8 * (2 * packed_ternary_bytes(ctx.n) + 2 * ctx.n * ctx.exp_bytes);
}

}  // namespace csi
