#include "pdvsim/traffic.hpp"

#include <cmath>

namespace pdvsim {

VoicePacketization voice_packetization(double codec_rate_bps, double sample_interval_s) {
    double bits = codec_rate_bps * sample_interval_s;
    double bytes = bits / 8.0;
    double rounded = std::round(bytes);
    if (std::fabs(bytes - rounded) > 1e-9 || rounded < 1.0)
        throw NonIntegralPayloadError("voice payload of " + std::to_string(bytes) +
                                      " bytes is not a whole byte count");
    return {static_cast<int>(rounded), 1.0 / sample_interval_s};
}

VoiceDwell voice_onoff_next(VoiceState current, double talkspurt_mean_s,
                            double silence_mean_s, RngStream& rng) {
    if (current == VoiceState::Talk)
        return {VoiceState::Silence, rng.exponential(silence_mean_s)};
    return {VoiceState::Talk, rng.exponential(talkspurt_mean_s)};
}

} // namespace pdvsim
