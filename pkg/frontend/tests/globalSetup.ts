// Starts the mock-backed project service for the workflow tests.

import { spawn, type ChildProcess } from 'node:child_process';
import { mkdtempSync, rmSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join, resolve } from 'node:path';
import type { TestProject } from 'vitest/node';

export const API_PORT = 8971;
export const API_BASE = `http://127.0.0.1:${API_PORT}`;

let service: ChildProcess | undefined;
let storeDir: string | undefined;

async function waitHealthy(base: string): Promise<void> {
  for (let attempt = 0; attempt < 200; attempt += 1) {
    try {
      const response = await fetch(`${base}/health`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolveSleep) => setTimeout(resolveSleep, 100));
  }
  throw new Error('project service did not become healthy');
}

export async function setup(project: TestProject): Promise<void> {
  storeDir = mkdtempSync(join(tmpdir(), 'oppgen-ui-store-'));
  const repoRoot = resolve(import.meta.dirname ?? '.', '..', '..');
  service = spawn(
    'python3',
    ['-m', 'oppgen.service', '--store', storeDir, '--port', String(API_PORT)],
    { cwd: repoRoot, stdio: 'ignore' },
  );
  await waitHealthy(API_BASE);
  project.provide('apiBase', API_BASE);
}

export async function teardown(): Promise<void> {
  if (service) service.kill('SIGTERM');
  if (storeDir) rmSync(storeDir, { recursive: true, force: true });
}

declare module 'vitest' {
  export interface ProvidedContext {
    apiBase: string;
  }
}
