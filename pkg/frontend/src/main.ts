/**
 * App bootstrap: fetch the genre space, show the bar at uniform
 * proportions, run an initial search, then re-search once per completed
 * handle drag. A newer search supersedes any in-flight one; a failed
 * search shows a retry banner without rolling back the bar.
 */

import { ApiClient } from './api';
import { BarState, stateFromWeights } from './barModel';
import { GenreBar } from './bar';
import { renderPlaylist } from './playlist';
import './styles.css';

const BAR_WIDTH = 400;
const DEFAULT_K = 5;

export interface App {
  bar: GenreBar;
}

export async function loadApp(root: HTMLElement, api: ApiClient = new ApiClient()): Promise<App> {
  root.replaceChildren();
  let genres: string[];
  try {
    genres = (await api.genres()).genres;
  } catch (error) {
    renderErrorScreen(root, api, error);
    throw error;
  }

  const heading = document.createElement('h1');
  heading.textContent = 'Genre bar';

  const playlistRoot = document.createElement('div');
  playlistRoot.className = 'playlist-root';

  const banner = document.createElement('div');
  banner.className = 'error-banner';
  banner.hidden = true;

  const kInput = document.createElement('input');
  kInput.type = 'number';
  kInput.min = '1';
  kInput.max = '100';
  kInput.value = String(DEFAULT_K);
  kInput.className = 'k-input';
  const kLabel = document.createElement('label');
  kLabel.className = 'k-label';
  kLabel.append('songs: ', kInput);

  let inFlight: AbortController | null = null;
  let lastState: BarState;

  async function runSearch(state: BarState): Promise<void> {
    lastState = state;
    inFlight?.abort();
    const controller = new AbortController();
    inFlight = controller;
    const k = Math.max(1, Math.min(100, Number(kInput.value) || DEFAULT_K));
    try {
      const response = await api.search(state.weights, k, controller.signal);
      if (controller !== inFlight) return; // superseded by a newer drag
      banner.hidden = true;
      renderPlaylist(playlistRoot, response.entries);
    } catch (error) {
      if (controller.signal.aborted) return;
      banner.replaceChildren();
      banner.append(`search failed: ${error instanceof Error ? error.message : error} `);
      const retry = document.createElement('button');
      retry.textContent = 'retry';
      retry.addEventListener('click', () => void runSearch(lastState));
      banner.appendChild(retry);
      banner.hidden = false;
    }
  }

  const uniform = stateFromWeights(genres.map(() => 1 / genres.length));
  const bar = new GenreBar({
    genres,
    width: BAR_WIDTH,
    initial: uniform,
    onDragEnd: (state) => void runSearch(state),
  });
  kInput.addEventListener('change', () => void runSearch(bar.getState()));

  root.append(heading, bar.element, kLabel, banner, playlistRoot);
  await runSearch(uniform);
  return { bar };
}

function renderErrorScreen(root: HTMLElement, api: ApiClient, error: unknown): void {
  root.replaceChildren();
  const screen = document.createElement('div');
  screen.className = 'error-screen';
  const message = document.createElement('p');
  message.textContent = `cannot reach the genrebar service: ${
    error instanceof Error ? error.message : error
  }`;
  const retry = document.createElement('button');
  retry.textContent = 'retry';
  retry.addEventListener('click', () => {
    void loadApp(root, api).catch(() => undefined);
  });
  screen.append(message, retry);
  root.appendChild(screen);
}

const mount = document.getElementById('app');
if (mount !== null) {
  void loadApp(mount).catch(() => undefined);
}
