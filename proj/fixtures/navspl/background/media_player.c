/* In-car media player from a previous product. */
#include "media.h"

// Open the audio mixer and load the speech phrase templates.
void media_player_open(struct media_player *player) {
  player->mixer = audio_mixer_open(44100);
  player->templates = phrase_templates_load("announcements.txt");
}

void media_player_announce(struct media_player *player, const char *street_name) {
  struct phrase phrase = phrase_templates_render(player->templates, PHRASE_TRACK,
                                                 street_name);
  audio_mixer_queue(player->mixer, speech_synthesize(phrase));
}

/* Duck music volume while a speech announcement plays. */
void media_player_duck(struct media_player *player, double factor) {
  audio_mixer_set_gain(player->mixer, CHANNEL_MUSIC, factor);
}
