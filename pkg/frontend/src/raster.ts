/** A plain RGB pixel buffer with the few drawing primitives the plots need. */

import { GLYPH_HEIGHT, GLYPH_SPACING, GLYPH_WIDTH, glyphFor } from "./font.js";

export type Color = readonly [number, number, number];

export const WHITE: Color = [255, 255, 255];
export const BLACK: Color = [0, 0, 0];
export const GRAY: Color = [170, 170, 170];
export const LIGHT_GRAY: Color = [225, 225, 225];
export const BLUE: Color = [52, 101, 164];
export const RED: Color = [200, 40, 40];
export const GREEN: Color = [40, 140, 70];
export const ORANGE: Color = [220, 130, 30];

export class Raster {
  readonly width: number;
  readonly height: number;
  readonly pixels: Uint8Array;

  constructor(width: number, height: number, background: Color = WHITE) {
    this.width = width;
    this.height = height;
    this.pixels = new Uint8Array(width * height * 3);
    for (let i = 0; i < width * height; i++) {
      this.pixels[i * 3] = background[0];
      this.pixels[i * 3 + 1] = background[1];
      this.pixels[i * 3 + 2] = background[2];
    }
  }

  set(x: number, y: number, color: Color): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (y * this.width + x) * 3;
    this.pixels[i] = color[0];
    this.pixels[i + 1] = color[1];
    this.pixels[i + 2] = color[2];
  }

  fillRect(x: number, y: number, w: number, h: number, color: Color): void {
    const x1 = Math.max(0, x);
    const y1 = Math.max(0, y);
    const x2 = Math.min(this.width, x + w);
    const y2 = Math.min(this.height, y + h);
    for (let yy = y1; yy < y2; yy++) {
      for (let xx = x1; xx < x2; xx++) {
        this.set(xx, yy, color);
      }
    }
  }

  hline(x1: number, x2: number, y: number, color: Color, dash = 0): void {
    for (let x = Math.min(x1, x2); x <= Math.max(x1, x2); x++) {
      if (dash > 0 && Math.floor(x / dash) % 2 === 1) continue;
      this.set(x, y, color);
    }
  }

  vline(x: number, y1: number, y2: number, color: Color, dash = 0): void {
    for (let y = Math.min(y1, y2); y <= Math.max(y1, y2); y++) {
      if (dash > 0 && Math.floor(y / dash) % 2 === 1) continue;
      this.set(x, y, color);
    }
  }

  marker(x: number, y: number, color: Color, size = 2): void {
    this.fillRect(x - (size >> 1), y - (size >> 1), size, size, color);
  }

  text(x: number, y: number, content: string, color: Color, scale = 1): void {
    let cursor = x;
    for (const ch of content) {
      const glyph = glyphFor(ch);
      for (let row = 0; row < GLYPH_HEIGHT; row++) {
        for (let col = 0; col < GLYPH_WIDTH; col++) {
          if (glyph[row][col] === "X") {
            this.fillRect(cursor + col * scale, y + row * scale, scale, scale, color);
          }
        }
      }
      cursor += (GLYPH_WIDTH + GLYPH_SPACING) * scale;
    }
  }
}
