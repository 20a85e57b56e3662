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
#include <string>
#include <variant>
#include <vector>

#include "csi/codec.hpp"
#include "csi/ibbs.hpp"
#include "csi/ibid.hpp"

namespace csi {

inline constexpr std::uint8_t kFrameMagic[4] = {'C', 'I', 'B', 'S'};
inline constexpr std::uint8_t kWireVersion = 0x01;
inline constexpr std::size_t kFrameHeaderBytes = 10;
inline constexpr std::size_t kMaxPayloadBytes = 16u << 20;

enum class MsgType : std::uint8_t {
  params = 0x01,
  upk = 0x02,
  rho_s1 = 0x03,
  rho_u = 0x04,
  rho_s2 = 0x05,
  sig = 0x06,
  id_commit = 0x07,
  id_challenge = 0x08,
  id_response = 0x09,
  error = 0x0A,
  msk = 0x0B,
  usk = 0x0C,
};

const char* msg_type_name(MsgType type) noexcept;
bool is_known_msg_type(std::uint8_t type) noexcept;

struct Frame {
  MsgType type = MsgType::error;
  Bytes payload;

  friend bool operator==(const Frame&, const Frame&) = default;
};

/// magic || version || type || u32 BE length || payload.
Bytes encode_frame(const Frame& frame);
/// Exactly one frame, no trailing bytes.
Frame decode_frame(std::span<const std::uint8_t> bytes);
/// Parses the 10-byte header; returns (type, payload length).
std::pair<MsgType, std::uint32_t> decode_frame_header(std::span<const std::uint8_t> header);

enum class Scheme : std::uint8_t { ibbs = 0, ibid = 1 };

/// Self-describing parameter record (PARAMS payload).
struct ParamsMsg {
  Scheme scheme = Scheme::ibbs;
  ActionParams action;
  std::uint8_t mode = 0;
  SetPolicy policy = SetPolicy::super;
  ExceptionalSet set;
  CurveVec E0, E1;  // E1 empty for IBID
  std::uint32_t retry_limit = 0;

  friend bool operator==(const ParamsMsg&, const ParamsMsg&) = default;
};

ParamsMsg describe(const IbbsParams& params);
ParamsMsg describe(const IbidParams& params);
/// Rebuild and validate (set policy, orbit membership, N odd).
IbbsParams to_ibbs_params(const ParamsMsg& msg);
IbidParams to_ibid_params(const ParamsMsg& msg);

struct UpkMsg {
  Bytes id;
  UserPublicKey upk;

  friend bool operator==(const UpkMsg&, const UpkMsg&) = default;
};

struct UskMsg {
  Bytes id;
  UserSecretKey usk;

  friend bool operator==(const UskMsg&, const UskMsg&) = default;
};

struct MskMsg {
  std::vector<std::uint64_t> s;

  friend bool operator==(const MskMsg&, const MskMsg&) = default;
};

struct ErrorMsg {
  ErrorCode code = ErrorCode::internal;
  std::string text;

  friend bool operator==(const ErrorMsg&, const ErrorMsg&) = default;
};

struct IdChallengeMsg {
  TernaryVec v;

  friend bool operator==(const IdChallengeMsg&, const IdChallengeMsg&) = default;
};

struct IdResponseMsg {
  ExponentVec z;

  friend bool operator==(const IdResponseMsg&, const IdResponseMsg&) = default;
};

using Message = std::variant<ParamsMsg, UpkMsg, RhoS1, RhoU, RhoS2, Signature, IbidCommitment, IdChallengeMsg,
                             IdResponseMsg, ErrorMsg, MskMsg, UskMsg>;

MsgType message_type(const Message& msg) noexcept;
Frame encode_message(const Message& msg, const WireContext& ctx);
/// PARAMS and ERROR frames ignore `ctx`.
Message decode_message(const Frame& frame, const WireContext& ctx);

template <class T>
T decode_as(const Frame& frame, const WireContext& ctx) {
  Message m = decode_message(frame, ctx);
  if (auto* p = std::get_if<T>(&m)) return std::move(*p);
  fail(ErrorCode::protocol, std::string("unexpected message type ") + msg_type_name(frame.type));
}

inline constexpr std::uint8_t kSigMagic[4] = {'I', 'B', 'B', 'S'};
inline constexpr std::size_t kSigHeaderBytes = 8;

/// "IBBS" || version || mode || u16 BE n || packed c~0 || packed c~1 || r~0 || r~1.
Bytes encode_signature_file(const Signature& sig, IbbsMode mode, const WireContext& ctx);
Signature decode_signature_file(std::span<const std::uint8_t> bytes, IbbsMode mode, const WireContext& ctx);

/// Bit length of the SIG payload for (n, exponent bytes).
std::size_t signature_payload_bits(const WireContext& ctx);

}  // namespace csi
