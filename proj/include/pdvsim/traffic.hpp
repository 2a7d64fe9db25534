#ifndef PDVSIM_TRAFFIC_HPP
#define PDVSIM_TRAFFIC_HPP

#include <cstdint>
#include <string>

#include "pdvsim/engine.hpp"
#include "pdvsim/netmodel.hpp"
#include "pdvsim/rng.hpp"

namespace pdvsim {

class NonIntegralPayloadError : public SimError {
  public:
    explicit NonIntegralPayloadError(const std::string& what) : SimError(what) {}
};

// One video conferencing call: a deterministic frame clock at frame_rate,
// frame_bytes per frame. frame_bytes * frame_rate * 8 is the call bit rate.
struct VideoAppSpec {
    std::string name;
    Dscp dscp = Dscp::AF11;
    std::string src;
    std::string dst;
    int frame_bytes = 0;
    double frame_rate = 0.0;      // frames/second
    double start_offset_s = 0.0;  // within the profile
    Transport transport = Transport::Udp;
};

// One voice call: G.711-style constant packetization during exponentially
// distributed talkspurts, silent otherwise.
struct VoiceAppSpec {
    std::string name;
    std::string src;
    std::string dst;
    double codec_rate_bps = 64000.0;
    double sample_interval_s = 0.010;
    int frames_per_packet = 1;
    double silence_mean_in_s = 0.65;
    double silence_mean_out_s = 0.65;
    double talkspurt_mean_s = 0.352;
    double compression_delay_s = 0.02;
    double decompression_delay_s = 0.02;
    double start_offset_s = 0.0;
    Transport transport = Transport::RtpOverUdp;
};

// Applications start at profile start + per-application offset and run to
// the end of the simulation.
struct ProfileSpec {
    std::string name = "Video_Voice_Profile";
    double start_s = 100.0;
    bool once = true;         // repeatability: once at start time
    bool simultaneous = true; // operation mode
};

struct VoicePacketization {
    int payload_bytes = 0;
    double packets_per_second = 0.0;
};

// payload = codec_rate * sample_interval / 8 bytes; pps = 1/sample_interval.
// Throws NonIntegralPayloadError if the payload is not a whole byte count.
VoicePacketization voice_packetization(double codec_rate_bps, double sample_interval_s);

enum class VoiceState : std::uint8_t { Talk, Silence };

struct VoiceDwell {
    VoiceState next_state = VoiceState::Talk;
    double dwell_s = 0.0;
};

// Alternates talk <-> silence; dwell times are exponential with the
// respective means.
VoiceDwell voice_onoff_next(VoiceState current, double talkspurt_mean_s,
                            double silence_mean_s, RngStream& rng);

// One-way delay of a delivered application unit. Voice adds the endpoint
// compression + decompression time to the reported delay; it is not
// simulated as network occupancy.
inline double one_way_delay_s(simtime_ns created, simtime_ns arrival, double codec_delays_s) {
    return seconds_from_ns(arrival - created) + codec_delays_s;
}

} // namespace pdvsim

#endif
