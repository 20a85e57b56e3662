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

#include "csi/session.hpp"

#include <algorithm>
#include <string>

namespace csi {

namespace {

/// Frame I/O with logging and peer error propagation.
class Channel {
 public:
  Channel(Transport& t, TranscriptLog* log, const char* role, WireContext ctx)
      : t_(t), log_(log), role_(role), ctx_(ctx) {}

  void send(const Message& msg) {
    Frame f = encode_message(msg, ctx_);
    if (log_) log_->record(role_, "send", f);
    send_frame(t_, f);
  }

  std::optional<Frame> recv_raw() {
    auto f = recv_frame(t_);
    if (f && log_) log_->record(role_, "recv", *f);
    return f;
  }

  /// Next frame, which must be of type `want`. End-of-stream and unexpected
  /// types are protocol errors; ERROR frames rethrow the peer's class.
  Frame expect(MsgType want) {
    auto f = recv_raw();
    if (!f) fail(ErrorCode::transport, std::string("peer closed the stream while waiting for ") + msg_type_name(want));
    if (f->type == MsgType::error && want != MsgType::error) raise_peer_error(*f);
    if (f->type != want) {
      fail(ErrorCode::protocol, std::string("expected ") + msg_type_name(want) + ", got " + msg_type_name(f->type));
    }
    return std::move(*f);
  }

  [[noreturn]] void raise_peer_error(const Frame& f) {
    auto e = decode_as<ErrorMsg>(f, ctx_);
    fail(e.code == ErrorCode::rejected ? ErrorCode::protocol : e.code, "peer reported: " + e.text);
  }

  /// Best-effort ERROR frame before propagating a local failure.
  void report(const Error& e) noexcept {
    try {
      send(ErrorMsg{e.code(), e.what()});
    } catch (...) {
    }
  }

  const WireContext& ctx() const { return ctx_; }
  Transport& transport() { return t_; }

 private:
  Transport& t_;
  TranscriptLog* log_;
  const char* role_;
  WireContext ctx_;
};

template <class Fn>
auto reporting(Channel& ch, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::transport) ch.report(e);
    throw;
  }
}

}  // namespace

SignerReport run_blind_signer(Transport& t, const IbbsParams& params, const UserSecretKey& usk,
                              const UserPublicKey& upk, std::span<const std::uint8_t> id, Rng& rng,
                              TranscriptLog* log, std::uint32_t max_sessions) {
  Channel ch(t, log, "signer", params.wire());
  if (max_sessions == 0) max_sessions = params.retry_limit;
  SignerReport report;
  reporting(ch, [&] {
    ch.send(UpkMsg{Bytes(id.begin(), id.end()), upk});
    for (;;) {
      if (report.sessions == max_sessions) fail(ErrorCode::retry_limit, "signer: session limit reached");
      ++report.sessions;
      auto [rho1, session] = ibbs_s1(params, usk, upk, id, rng);
      ch.send(rho1);
      auto rho_u = decode_as<RhoU>(ch.expect(MsgType::rho_u), ch.ctx());
      ch.send(ibbs_s2(session, params, usk, rho_u));

      auto next = ch.recv_raw();
      if (!next) {
        report.completed = true;
        return 0;
      }
      if (next->type != MsgType::error) {
        fail(ErrorCode::protocol, std::string("signer: unexpected ") + msg_type_name(next->type) + " after RHO_S2");
      }
      auto err = decode_as<ErrorMsg>(*next, ch.ctx());
      if (err.code != ErrorCode::rejected) fail(err.code, "peer reported: " + err.text);
    }
  });
  t.close_write();
  return report;
}

UserReport run_blind_user(Transport& t, const IbbsParams& params, std::span<const std::uint8_t> expected_id,
                          const std::optional<UserPublicKey>& expected_upk, std::span<const std::uint8_t> m,
                          Rng& rng, TranscriptLog* log, std::uint32_t limit) {
  Channel ch(t, log, "user", params.wire());
  if (limit == 0) limit = params.retry_limit;
  UserReport report;
  reporting(ch, [&] {
    auto hello = decode_as<UpkMsg>(ch.expect(MsgType::upk), ch.ctx());
    if (!expected_id.empty() && !std::equal(expected_id.begin(), expected_id.end(), hello.id.begin(), hello.id.end())) {
      fail(ErrorCode::protocol, "user: signer announced a different identity");
    }
    if (expected_upk && *expected_upk != hello.upk) fail(ErrorCode::protocol, "user: signer public key mismatch");
    report.id = hello.id;
    report.upk = hello.upk;

    for (;;) {
      ++report.attempts;
      auto rho1 = decode_as<RhoS1>(ch.expect(MsgType::rho_s1), ch.ctx());
      auto [rho_u, session] = ibbs_u1(params, report.upk, report.id, rho1, m, rng);
      ch.send(rho_u);
      auto rho2 = decode_as<RhoS2>(ch.expect(MsgType::rho_s2), ch.ctx());
      U2Result out = ibbs_u2(session, params, report.upk, report.id, rho2);
      report.last_mismatches = std::move(out.mismatches);
      if (out.signature) {
        report.signature = std::move(out.signature);
        return 0;
      }
      if (report.attempts >= limit) {
        ch.send(ErrorMsg{ErrorCode::retry_limit, "user: no valid signature within the retry limit"});
        return 0;
      }
      ch.send(ErrorMsg{ErrorCode::rejected, "user: signature rejected, retrying"});
    }
  });
  t.close_write();
  return report;
}

void run_ibid_prover(Transport& t, const IbidParams& params, const IbidUserKey& key, Rng& rng, TranscriptLog* log) {
  Channel ch(t, log, "prover", params.wire());
  reporting(ch, [&] {
    IbidProver prover(params, key);
    ch.send(prover.commit(rng));
    auto v = decode_as<IdChallengeMsg>(ch.expect(MsgType::id_challenge), ch.ctx());
    ch.send(IdResponseMsg{prover.respond(v.v)});
    return 0;
  });
  t.close_write();
}

bool run_ibid_verifier(Transport& t, const IbidParams& params, std::span<const std::uint8_t> id, Rng& rng,
                       TranscriptLog* log) {
  Channel ch(t, log, "verifier", params.wire());
  bool accepted = reporting(ch, [&] {
    IbidVerifier verifier(params, Bytes(id.begin(), id.end()));
    verifier.receive_commitment(decode_as<IbidCommitment>(ch.expect(MsgType::id_commit), ch.ctx()));
    ch.send(IdChallengeMsg{verifier.challenge(rng)});
    auto z = decode_as<IdResponseMsg>(ch.expect(MsgType::id_response), ch.ctx());
    return verifier.decide(z.z);
  });
  t.close_write();
  return accepted;
}

}  // namespace csi
