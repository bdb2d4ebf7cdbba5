import { createHash } from "node:crypto";
import { mkdtempSync, readFileSync, writeFileSync, existsSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { run } from "../src/main.js";
import { pngDimensions, encodePng } from "../src/png.js";
import { formatNumber } from "../src/plot.js";
import { textWidth } from "../src/font.js";

const FIXTURES = join(__dirname, "..", "fixtures");
const INTERFERENCE = {
  csv: join(FIXTURES, "interference.csv"),
  meta: join(FIXTURES, "interference.json"),
};
const CUT = {
  csv: join(FIXTURES, "random_cut.csv"),
  meta: join(FIXTURES, "random_cut.json"),
};

function sha256(path: string): string {
  return createHash("sha256").update(readFileSync(path)).digest("hex");
}

function tempDir(): string {
  return mkdtempSync(join(tmpdir(), "sinrcap-plots-"));
}

describe("render", () => {
  it("renders an interference scatter and leaves inputs untouched", () => {
    const dir = tempDir();
    const out = join(dir, "interference.png");
    const before = [sha256(INTERFERENCE.csv), sha256(INTERFERENCE.meta)];
    const code = run(["render", "--csv", INTERFERENCE.csv, "--meta", INTERFERENCE.meta, "--kind", "interference-scatter", "--out", out]);
    expect(code).toBe(0);
    const image = readFileSync(out);
    expect(pngDimensions(image)).toEqual({ width: 960, height: 600 });
    expect([sha256(INTERFERENCE.csv), sha256(INTERFERENCE.meta)]).toEqual(before);
  });

  it("renders a cut-capacity series", () => {
    const dir = tempDir();
    const out = join(dir, "cut.png");
    const code = run(["--csv", CUT.csv, "--meta", CUT.meta, "--kind", "cut-capacity-series", "--out", out]);
    expect(code).toBe(0);
    expect(pngDimensions(readFileSync(out)).width).toBe(960);
  });

  it("re-invocation is byte-identical", () => {
    const dir = tempDir();
    const out1 = join(dir, "a.png");
    const out2 = join(dir, "b.png");
    for (const [fixture, kind] of [
      [INTERFERENCE, "interference-scatter"],
      [CUT, "cut-capacity-series"],
    ] as const) {
      run(["--csv", fixture.csv, "--meta", fixture.meta, "--kind", kind, "--out", out1]);
      run(["--csv", fixture.csv, "--meta", fixture.meta, "--kind", kind, "--out", out2]);
      expect(readFileSync(out1).equals(readFileSync(out2))).toBe(true);
    }
  });

  it("names the missing column on schema mismatch", () => {
    const dir = tempDir();
    const broken = join(dir, "broken.csv");
    const text = readFileSync(INTERFERENCE.csv, "utf8").replace("trial,node_id,J,I", "trial,node_id,sum,I");
    writeFileSync(broken, text);
    const errors: string[] = [];
    const original = console.error;
    console.error = (msg: string) => errors.push(msg);
    try {
      const code = run(["--csv", broken, "--meta", INTERFERENCE.meta, "--kind", "interference-scatter", "--out", join(dir, "x.png")]);
      expect(code).toBe(2);
    } finally {
      console.error = original;
    }
    expect(errors.join("\n")).toContain('"J"');
    expect(existsSync(join(dir, "x.png"))).toBe(false);
  });

  it("rejects an empty CSV without writing an image", () => {
    const dir = tempDir();
    const empty = join(dir, "empty.csv");
    writeFileSync(empty, "trial,node_id,J,I\n");
    const original = console.error;
    console.error = () => undefined;
    try {
      const code = run(["--csv", empty, "--meta", INTERFERENCE.meta, "--kind", "interference-scatter", "--out", join(dir, "y.png")]);
      expect(code).toBe(2);
    } finally {
      console.error = original;
    }
    expect(existsSync(join(dir, "y.png"))).toBe(false);
  });

  it("rejects unknown kinds and missing flags", () => {
    const original = console.error;
    console.error = () => undefined;
    try {
      expect(run(["--csv", CUT.csv, "--meta", CUT.meta, "--kind", "heatmap", "--out", "z.png"])).toBe(2);
      expect(run(["--csv", CUT.csv])).toBe(2);
      expect(run(["--csv", "no-such-file.csv", "--meta", CUT.meta, "--kind", "cut-capacity-series", "--out", "z.png"])).toBe(2);
    } finally {
      console.error = original;
    }
  });

  it("rejects a study/kind mismatch", () => {
    const dir = tempDir();
    const meta = JSON.parse(readFileSync(INTERFERENCE.meta, "utf8"));
    meta.study = "random-cut"; // sidecar claims the other study
    const twisted = join(dir, "twisted.json");
    writeFileSync(twisted, JSON.stringify(meta));
    const original = console.error;
    const errors: string[] = [];
    console.error = (msg: string) => errors.push(msg);
    try {
      const code = run(["--csv", INTERFERENCE.csv, "--meta", twisted, "--kind", "interference-scatter", "--out", join(dir, "m.png")]);
      expect(code).toBe(2);
    } finally {
      console.error = original;
    }
    expect(errors.join("\n")).toContain("interference-scatter");
  });
});

describe("png encoder", () => {
  it("round-trips dimensions and is deterministic", () => {
    const pixels = new Uint8Array(4 * 3 * 3);
    pixels.fill(200);
    const a = encodePng(4, 3, pixels);
    const b = encodePng(4, 3, pixels);
    expect(a.equals(b)).toBe(true);
    expect(pngDimensions(a)).toEqual({ width: 4, height: 3 });
  });

  it("rejects a mis-sized buffer", () => {
    expect(() => encodePng(4, 3, new Uint8Array(5))).toThrow();
  });
});

describe("label formatting", () => {
  it("is compact and deterministic", () => {
    expect(formatNumber(0)).toBe("0");
    expect(formatNumber(27.253743)).toBe("27.25");
    expect(formatNumber(0.00012)).toBe("1.20E-4");
    expect(formatNumber(-3.5)).toBe("-3.5");
  });

  it("text width scales with content", () => {
    expect(textWidth("AB")).toBe(11);
    expect(textWidth("")).toBe(0);
  });
});
