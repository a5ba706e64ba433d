/* Voice guidance for upcoming maneuvers. */
#include "nav.h"

#ifdef FEAT_VOICE
void voice_mixer_open(struct voice_guidance *voice) {
  voice->mixer = audio_mixer_open(22050);
  voice->templates = phrase_templates_load("phrases.txt");
}

// Announce a maneuver a distance ahead proportional to speed.
void voice_announce_maneuver(struct voice_guidance *voice, const struct maneuver *maneuver,
                             double speed_mps) {
  double lead_distance = speed_mps * 8.0;
  if (maneuver->distance_m > lead_distance) return;
  struct phrase phrase = phrase_templates_render(voice->templates, maneuver->kind,
                                                 maneuver->street_name);
  audio_mixer_queue(voice->mixer, speech_synthesize(phrase));
}

#ifdef FEAT_TRAFFIC
void voice_announce_congestion(struct voice_guidance *voice, const struct incident *incident) {
  struct phrase phrase = phrase_templates_render(voice->templates, PHRASE_CONGESTION,
                                                 incident->street_name);
  audio_mixer_queue(voice->mixer, speech_synthesize(phrase));
}
#endif
#endif

#ifndef FEAT_VOICE
/* Products without voice guidance use a chime for maneuvers. */
void chime_announce_maneuver(const struct maneuver *maneuver) {
  beeper_chime(maneuver->kind == MANEUVER_ARRIVE ? 2 : 1);
}
#endif
