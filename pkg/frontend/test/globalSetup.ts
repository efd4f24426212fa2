import { spawn, type ChildProcess } from "node:child_process";
import type { TestProject } from "vitest/node";

// Boot the real play service once for the whole test run; the e2e suite
// talks to it over HTTP exactly as the browser client would.

const PORT = 8791;
let server: ChildProcess | undefined;

export default async function setup(project: TestProject): Promise<() => void> {
  server = spawn(
    "python3",
    [
      "-c",
      [
        "import tempfile, uvicorn",
        "from containment.service import build_app",
        `uvicorn.run(build_app(cache_dir=tempfile.mkdtemp()), port=${PORT}, log_level='warning')`,
      ].join("; "),
    ],
    { stdio: "inherit" },
  );

  const base = `http://127.0.0.1:${PORT}`;
  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      const res = await fetch(`${base}/health`);
      if (res.ok) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error("service did not come up");
    await new Promise((r) => setTimeout(r, 200));
  }
  project.provide("baseUrl", base);

  return () => {
    server?.kill();
  };
}

declare module "vitest" {
  export interface ProvidedContext {
    baseUrl: string;
  }
}
