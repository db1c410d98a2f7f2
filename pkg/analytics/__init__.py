# Analysis modules: corpus, indicators, ranking, sector, synth
