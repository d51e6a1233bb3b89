/**
 * Interactive stacked genre bar. K colored segments whose pixel widths
 * encode the proportions, separated by K-1 draggable handles. Labels update
 * live while dragging; the search callback fires exactly once per completed
 * drag that actually changed the state.
 */

import {
  BarState,
  applyDrag,
  handlePixelPositions,
  percentText,
  segmentPixelWidths,
} from './barModel';
import { genreColor } from './palette';

export interface GenreBarOptions {
  genres: readonly string[];
  width: number;
  initial: BarState;
  /** Called on every live state change (drag in progress). */
  onLiveChange?: (state: BarState) => void;
  /** Called once per completed drag that changed the proportions. */
  onDragEnd?: (state: BarState) => void;
}

export class GenreBar {
  readonly element: HTMLElement;

  private state: BarState;
  private readonly track: HTMLElement;
  private readonly segments: HTMLElement[] = [];
  private readonly handles: HTMLElement[] = [];
  private readonly labels: HTMLElement[] = [];
  private readonly options: GenreBarOptions;
  private dragIndex: number | null = null;
  private dragStartState: BarState | null = null;
  private grabOffsetPx = 0;

  constructor(options: GenreBarOptions) {
    this.options = options;
    this.state = options.initial;

    this.element = document.createElement('div');
    this.element.className = 'genre-bar';

    this.track = document.createElement('div');
    this.track.className = 'genre-bar-track';
    this.track.style.width = `${options.width}px`;

    options.genres.forEach((_, i) => {
      const segment = document.createElement('div');
      segment.className = 'genre-bar-segment';
      segment.style.background = genreColor(i);
      this.segments.push(segment);
      this.track.appendChild(segment);
    });

    for (let i = 0; i < options.genres.length - 1; i += 1) {
      const handle = document.createElement('div');
      handle.className = 'genre-bar-handle';
      handle.dataset.handleIndex = String(i);
      handle.addEventListener('pointerdown', (event) => this.onPointerDown(event, i));
      this.handles.push(handle);
      this.track.appendChild(handle);
    }

    const legend = document.createElement('div');
    legend.className = 'genre-bar-legend';
    options.genres.forEach((_name, i) => {
      const item = document.createElement('span');
      item.className = 'genre-bar-label';
      const swatch = document.createElement('span');
      swatch.className = 'genre-bar-swatch';
      swatch.style.background = genreColor(i);
      const text = document.createElement('span');
      item.append(swatch, text);
      this.labels.push(text);
      legend.appendChild(item);
    });

    this.element.append(this.track, legend);
    this.track.addEventListener('pointermove', (event) => this.onPointerMove(event));
    this.track.addEventListener('pointerup', (event) => this.onPointerUp(event));
    this.track.addEventListener('pointercancel', () => this.cancelDrag());
    this.render();
  }

  getState(): BarState {
    return this.state;
  }

  setState(state: BarState): void {
    this.state = state;
    this.render();
  }

  private onPointerDown(event: PointerEvent, index: number): void {
    event.preventDefault();
    this.dragIndex = index;
    this.dragStartState = this.state;
    // grab offset keeps the handle from jumping to the pointer center
    const left = this.track.getBoundingClientRect().left;
    const handlePx = handlePixelPositions(this.state.weights, this.options.width)[index];
    this.grabOffsetPx = event.clientX - left - handlePx;
    try {
      // route the rest of the gesture to the track even when the pointer
      // leaves the handle; not available in some test DOMs
      this.track.setPointerCapture?.(event.pointerId);
    } catch {
      // jsdom rejects unknown pointer ids
    }
  }

  private onPointerMove(event: PointerEvent): void {
    if (this.dragIndex === null) return;
    const left = this.track.getBoundingClientRect().left;
    const target = (event.clientX - left - this.grabOffsetPx) / this.options.width;
    const next = applyDrag(this.state, this.dragIndex, target);
    if (next !== this.state) {
      this.state = next;
      this.render();
      this.options.onLiveChange?.(next);
    }
  }

  private onPointerUp(_event: PointerEvent): void {
    if (this.dragIndex === null) return;
    // the last pointermove already holds the drop position; a press with no
    // movement therefore never changes state or triggers a search
    const changed =
      this.dragStartState !== null &&
      this.state.weights.some((w, i) => w !== this.dragStartState!.weights[i]);
    this.dragIndex = null;
    this.dragStartState = null;
    if (changed) {
      this.options.onDragEnd?.(this.state);
    }
  }

  private cancelDrag(): void {
    this.dragIndex = null;
    this.dragStartState = null;
  }

  private render(): void {
    const widths = segmentPixelWidths(this.state.weights, this.options.width);
    widths.forEach((w, i) => {
      this.segments[i].style.width = `${w}px`;
    });
    const positions = handlePixelPositions(this.state.weights, this.options.width);
    positions.forEach((px, i) => {
      this.handles[i].style.left = `${px}px`;
    });
    this.state.weights.forEach((w, i) => {
      this.labels[i].textContent = `${this.options.genres[i]} ${percentText(w)}`;
    });
  }
}
