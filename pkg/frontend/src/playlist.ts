/** Playlist panel: one row per result, in API response order. */

import { SearchEntry } from './api';
import { segmentPixelWidths } from './barModel';
import { genreColor } from './palette';

const MINI_BAR_WIDTH = 120;

export function renderPlaylist(root: HTMLElement, entries: readonly SearchEntry[]): void {
  root.replaceChildren();
  const list = document.createElement('ol');
  list.className = 'playlist';
  for (const entry of entries) {
    const row = document.createElement('li');
    row.className = 'playlist-row';

    const text = document.createElement('div');
    text.className = 'playlist-text';
    const title = document.createElement('div');
    title.className = 'playlist-title';
    title.textContent = entry.title;
    const artist = document.createElement('div');
    artist.className = 'playlist-artist';
    artist.textContent = entry.artist;
    text.append(title, artist);

    const mini = document.createElement('div');
    mini.className = 'playlist-mini-bar';
    mini.style.width = `${MINI_BAR_WIDTH}px`;
    segmentPixelWidths(entry.proportions, MINI_BAR_WIDTH).forEach((w, i) => {
      const segment = document.createElement('span');
      segment.style.width = `${w}px`;
      segment.style.background = genreColor(i);
      mini.appendChild(segment);
    });

    const distance = document.createElement('div');
    distance.className = 'playlist-distance';
    distance.textContent = entry.distance.toFixed(3);

    row.append(text, mini, distance);
    list.appendChild(row);
  }
  root.appendChild(list);
}
